#pragma once

#include "rht/cdga.hpp"
#include "rht/morgan.hpp"
#include "rht/ring_table.hpp"
#include "rht/stable_graph.hpp"
#include "rht/sullivan.hpp"

#include <string>

namespace rht {

// Canonical JSON serialization: fixed key order, 2-space indent, scalars as
// "p" / "p/q" strings, trailing newline. parse -> serialize is byte-stable.

std::string cdga_to_json_text(const Cdga& a);
Cdga cdga_from_json_text(const std::string& text);

std::string graph_to_json_text(const StableGraph& g);
StableGraph graph_from_json_text(const std::string& text);

std::string ring_table_to_json_text(const RingTable& t);
RingTable ring_table_from_json_text(const std::string& text);

std::string strata_to_json_text(const StrataDescription& d);
StrataDescription strata_from_json_text(const std::string& text);

std::string model_to_json_text(const MorganBigraded& m);
MorganBigraded model_from_json_text(const std::string& text);

std::string minimal_model_to_json_text(const MinimalModel& m);
/// Returns the model and the target algebra it maps to.
MinimalModel minimal_model_from_json_text(const std::string& text);

// File helpers (throw rht::Error on IO failure).
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Parses, then validates: the named schema must match the file's "schema"
/// field. Used by every CLI loader.
RingTable load_table(const std::string& path);
void save_table(const RingTable& t, const std::string& path);

} // namespace rht

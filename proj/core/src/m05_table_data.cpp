namespace rht {

// Golden (0,5) table; regenerate with `rht rings keel --n 5 --format json`.
// Empty until frozen; builtin_table(0,5) then falls back to the live engine.
const char* m05_table_json() { return ""; }

} // namespace rht

#include <iostream>

#include "uhecke/io.hpp"

using uhecke::json;

namespace {

void strip_timings(json& j) {
  if (j.is_object()) {
    j.erase("seconds");
    for (auto& [k, v] : j.items()) strip_timings(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_timings(v);
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: golden_diff ACTUAL EXPECTED\n";
    return 2;
  }
  try {
    json actual = uhecke::read_json_file(argv[1]), expected = uhecke::read_json_file(argv[2]);
    strip_timings(actual);
    strip_timings(expected);
    if (actual == expected) return 0;
    for (const auto& op : json::diff(expected, actual)) std::cerr << op.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}

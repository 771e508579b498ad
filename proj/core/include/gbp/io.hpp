#pragma once

#include <string>

#include "gbp/model.hpp"

namespace gbp {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Instance JSON: {"n_groups": int, "items": [{"id": int, "size": "p/q"|decimal,
// "group": int}, ...]} plus optional "name" and "seed". Emission uses "p/q"
// so that write/read round-trips losslessly.
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);

// Packing JSON: {"core_bins": int, "bins": [[id,...],...]} plus optional
// "source".
std::string packing_to_json(const Packing& p);
Packing packing_from_json(const std::string& text);

std::string report_to_json(const FeasibilityReport& rep);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace gbp

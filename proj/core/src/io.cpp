#include "gbp/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gbp {

using nlohmann::json;

namespace {

Rational size_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw ParseError("item size must be a string (\"p/q\" or decimal) or integer");
}

}  // namespace

std::string instance_to_json(const Instance& inst) {
  json j;
  j["n_groups"] = inst.n_groups;
  if (!inst.name.empty()) j["name"] = inst.name;
  if (inst.seed) j["seed"] = *inst.seed;
  j["items"] = json::array();
  for (const Item& it : inst.items)
    j["items"].push_back({{"id", it.id}, {"size", format_rational(it.size)}, {"group", it.group}});
  return j.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
  Instance inst;
  try {
    json j = json::parse(text);
    inst.n_groups = j.value("n_groups", 0);
    inst.name = j.value("name", "");
    if (j.contains("seed")) inst.seed = j["seed"].get<unsigned long long>();
    for (const auto& e : j.at("items")) {
      Item it;
      it.id = e.at("id").get<int>();
      it.size = size_from_json(e.at("size"));
      it.group = e.at("group").get<int>();
      inst.items.push_back(it);
    }
  } catch (const json::exception& ex) {
    throw ParseError(std::string("instance JSON: ") + ex.what());
  } catch (const std::invalid_argument& ex) {
    throw ParseError(std::string("instance JSON: ") + ex.what());
  }
  return validate_instance(std::move(inst));
}

std::string packing_to_json(const Packing& p) {
  json j;
  j["core_bins"] = p.core_bins;
  if (!p.source.empty()) j["source"] = p.source;
  j["bins"] = json::array();
  for (const auto& bin : p.bins) j["bins"].push_back(bin);
  return j.dump(2) + "\n";
}

Packing packing_from_json(const std::string& text) {
  Packing p;
  try {
    json j = json::parse(text);
    p.core_bins = j.at("core_bins").get<int>();
    p.source = j.value("source", "");
    for (const auto& bin : j.at("bins")) p.bins.push_back(bin.get<std::vector<int>>());
  } catch (const json::exception& ex) {
    throw ParseError(std::string("packing JSON: ") + ex.what());
  }
  if (p.core_bins < 0 || p.core_bins > p.total_bins())
    throw ParseError("packing JSON: core_bins out of range");
  p.refresh_discarded();
  return p;
}

std::string report_to_json(const FeasibilityReport& rep) {
  json j;
  j["feasible"] = rep.feasible;
  j["violations"] = json::array();
  for (const Violation& v : rep.violations) {
    const char* kind = v.kind == ViolationKind::Capacity    ? "capacity"
                       : v.kind == ViolationKind::Conflict  ? "conflict"
                       : v.kind == ViolationKind::Duplicate ? "duplicate"
                                                            : "missing";
    j["violations"].push_back({{"bin", v.bin}, {"kind", kind}, {"detail", v.detail}});
  }
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << content;
}

}  // namespace gbp

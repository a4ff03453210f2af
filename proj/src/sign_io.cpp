#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>

#include <json.hpp>

#include "gridhfl/signs.hpp"

namespace gridhfl {

void write_signs(std::ostream& out, const SignAssignment& s) {
  const auto& table = s.table();
  const auto profile = hv_profile(s);
  nlohmann::ordered_json header;
  header["format"] = "gridhfl-signs";
  header["version"] = 1;
  header["grid_hash"] = grid_hash(s.grid());
  header["n"] = table.n();
  header["phi"] = phi(profile);
  header["r"] = component_signs(s.grid(), profile).r;
  out << "# " << header.dump() << '\n';
  for (std::size_t id = 0; id < table.slot_count(); ++id) {
    if (!table.slot(id).valid) continue;
    out << table.key(id) << '\t' << (s.at(id) > 0 ? "+1" : "-1") << '\n';
  }
}

SignAssignment read_signs(std::istream& in, const TablePtr& table) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
    throw Error(ErrorKind::SyntaxError, "sign file must start with a '# {...}' header");
  }
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line.substr(2));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::SyntaxError, std::string("bad sign file header: ") + e.what());
  }
  if (header.value("grid_hash", std::string()) != grid_hash(table->grid())) {
    throw Error(ErrorKind::GridMismatch, "sign file was written for a different grid");
  }

  std::unordered_map<std::string, std::size_t> slot_of_key;
  for (std::size_t id = 0; id < table->slot_count(); ++id) {
    if (table->slot(id).valid) slot_of_key.emplace(table->key(id), id);
  }
  std::vector<std::int8_t> values(table->slot_count(), 0);
  std::size_t seen = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw Error(ErrorKind::SyntaxError, "expected 'key<TAB>sign': " + line);
    const auto it = slot_of_key.find(line.substr(0, tab));
    if (it == slot_of_key.end()) throw Error(ErrorKind::SyntaxError, "unknown rectangle key " + line.substr(0, tab));
    const std::string sign = line.substr(tab + 1);
    if (sign != "+1" && sign != "-1") throw Error(ErrorKind::SyntaxError, "sign must be +1 or -1: " + line);
    if (values[it->second] != 0) throw Error(ErrorKind::SyntaxError, "duplicate rectangle key " + it->first);
    values[it->second] = sign == "+1" ? 1 : -1;
    ++seen;
  }
  if (seen != table->valid_count()) {
    throw Error(ErrorKind::SyntaxError, "sign file covers " + std::to_string(seen) + " of " +
                                            std::to_string(table->valid_count()) + " rectangles");
  }
  return SignAssignment(table, std::move(values));
}

}  // namespace gridhfl

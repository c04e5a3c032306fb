#include "cyclebound/catalog.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "cyclebound/error.hpp"

namespace cyclebound {

using nlohmann::json;

std::string to_catalog_line(const CycleRecord& record) {
  json elements = json::array();
  for (const auto& e : record.elements) elements.push_back(to_decimal(e));
  // nlohmann::ordered_json keeps the documented field order on disk.
  nlohmann::ordered_json j;
  j["p"] = record.system.p;
  j["q"] = record.system.q;
  j["elements"] = elements;
  j["k_sequence"] = record.k_sequence;
  j["s_m"] = record.s_m;
  j["m"] = record.m();
  j["a_min"] = to_decimal(record.a_min);
  j["loop_class"] = to_string(record.loop_class);
  return j.dump();
}

CycleRecord parse_catalog_line(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed catalog line: ") + e.what());
  }
  try {
    CycleRecord rec;
    rec.system = PqSystem::make(j.at("p").get<std::uint64_t>(), j.at("q").get<std::uint64_t>());
    for (const auto& e : j.at("elements")) rec.elements.push_back(parse_big(e.get<std::string>()));
    rec.k_sequence = j.at("k_sequence").get<std::vector<unsigned>>();
    rec.s_m = j.at("s_m").get<std::uint64_t>();
    rec.a_min = parse_big(j.at("a_min").get<std::string>());
    rec.loop_class = parse_loop_class(j.at("loop_class").get<std::string>());
    const auto m = j.at("m").get<std::size_t>();
    if (m != rec.elements.size() || m != rec.k_sequence.size()) {
      throw Error(ErrorKind::Parse, "m does not match the element and k_sequence counts");
    }
    return rec;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("catalog field error: ") + e.what());
  }
}

std::vector<CatalogEntry> read_catalog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open catalog " + path.string());
  std::vector<CatalogEntry> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back({n, parse_catalog_line(line)});
    } catch (const Error& e) {
      throw Error(e.kind(), path.string() + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  if (in.bad()) throw Error(ErrorKind::Io, "read error on " + path.string());
  return out;
}

std::size_t merge_into_catalog(const std::filesystem::path& path, const std::vector<CycleRecord>& records) {
  std::vector<CycleRecord> all;
  if (std::filesystem::exists(path)) {
    for (auto& e : read_catalog(path)) all.push_back(std::move(e.record));
  }
  all.insert(all.end(), records.begin(), records.end());
  std::sort(all.begin(), all.end(), catalog_less);
  all.erase(std::unique(all.begin(), all.end(),
                        [](const CycleRecord& a, const CycleRecord& b) {
                          return a.system == b.system && a.elements == b.elements;
                        }),
            all.end());

  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
    for (const auto& r : all) out << to_catalog_line(r) << '\n';
    out.flush();
    if (!out) throw Error(ErrorKind::Io, "write error on " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot replace " + path.string() + ": " + ec.message());
  return all.size();
}

}  // namespace cyclebound

#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>

#include <boost/container_hash/hash.hpp>

#include "relc/io.hpp"

// On-disk cache of stabilizer chains keyed by (degree, sorted generator images). A cached chain is
// used only when the stored generator list matches the group's exactly, in order, so the restored
// chain is identical to the one a fresh build would produce.
namespace relc::cache {

inline std::string key(const PermutationGroup& g) {
  std::vector<std::vector<Point>> imgs;
  for (const auto& s : g.generators()) imgs.push_back(s.images());
  std::sort(imgs.begin(), imgs.end());
  std::size_t h = boost::hash_value(g.degree());
  boost::hash_combine(h, imgs);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::filesystem::path path_for(const PermutationGroup& g, const std::string& dir) {
  return std::filesystem::path(dir) / ("chain-" + key(g) + ".json");
}

inline io::Json images_json(const std::vector<Permutation>& gens) {
  io::Json a = io::Json::array();
  for (const auto& s : gens) a.push_back(s.images());
  return a;
}

// Installs a cached chain on g; returns false on a miss or an unusable entry.
inline bool load(const PermutationGroup& g, const std::string& dir) {
  auto p = path_for(g, dir);
  std::error_code ec;
  if (!std::filesystem::exists(p, ec)) return false;
  try {
    auto j = io::read_file(p.string());
    if (j.at("degree").get<std::size_t>() != g.degree()) return false;
    if (j.at("generators") != images_json(g.generators())) return false;
    std::vector<std::pair<Point, std::vector<Permutation>>> levels;
    for (const auto& l : j.at("levels")) {
      std::vector<Permutation> gens;
      for (const auto& s : l.at("gens")) gens.emplace_back(s.get<std::vector<Point>>());
      levels.emplace_back(l.at("base").get<Point>(), std::move(gens));
    }
    auto chain = StabilizerChain::from_levels(g.degree(), j.at("prefix_length").get<std::size_t>(), levels);
    for (const auto& s : g.generators())
      if (!chain.contains(s)) return false;
    g.adopt_chain(std::move(chain));
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

inline void store(const PermutationGroup& g, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) return;
  const auto& c = g.chain();
  io::Json levels = io::Json::array();
  for (const auto& l : c.levels()) levels.push_back({{"base", l.base}, {"gens", images_json(l.gens)}});
  io::Json j{{"degree", g.degree()},
             {"generators", images_json(g.generators())},
             {"prefix_length", c.prefix_length()},
             {"levels", std::move(levels)}};
  auto p = path_for(g, dir);
  auto tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << j.dump();
  }
  std::filesystem::rename(tmp, p, ec);
}

}  // namespace relc::cache

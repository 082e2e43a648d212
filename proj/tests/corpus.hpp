#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tcif/io.hpp"

namespace fixtures {

inline std::string corpus_dir() { return TCIF_CORPUS_DIR; }

inline tcif::TCI tci(const std::string& name) {
  return tcif::tci_from_json(tcif::read_json_file(corpus_dir() + "/tci/" + name + ".json"));
}

inline tcif::TCI schematic(const std::string& name) {
  return tcif::tci_from_json(tcif::read_json_file(corpus_dir() + "/schematic/" + name + ".json"));
}

inline std::vector<std::string> names(const std::string& sub) {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(corpus_dir() + "/" + sub))
    if (e.path().extension() == ".json") out.push_back(e.path().stem().string());
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<tcif::TCI> finite_tcis() {
  std::vector<tcif::TCI> out;
  for (const auto& n : names("tci")) out.push_back(tci(n));
  return out;
}

inline tcif::TCI from_text(const std::string& text) { return tcif::tci_from_json(tcif::json::parse(text)); }

}  // namespace fixtures

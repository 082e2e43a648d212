#pragma once

#include <map>
#include <string>
#include <vector>

#include "tcif/io.hpp"

namespace tcif {

// Bundled corpus: tci/, posets/, schematic/ and the frozen expected.json.
struct Corpus {
  std::string dir;
  std::map<std::string, TCI> tcis;
  std::map<std::string, Poset> posets;
  std::map<std::string, TCI> schematic;
  json expected;
  std::vector<std::string> files;  // relative to dir, sorted
};

Corpus load_corpus(const std::string& dir);

struct Check {
  int criterion = 0;
  std::string name;
  std::string file;
  json expected;
  json actual;
  bool pass = false;
  std::string provenance;  // operation that produced `actual`
};

inline constexpr int corpus_criteria = 9;
std::vector<Check> run_criterion(const Corpus& c, int criterion);

json check_to_json(const Check& c);

}  // namespace tcif

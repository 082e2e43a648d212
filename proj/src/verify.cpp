#include "tcif/verify.hpp"

#include <algorithm>
#include <filesystem>
#include <set>

#include "tcif/bridge.hpp"
#include "tcif/codec.hpp"
#include "tcif/compiler.hpp"
#include "tcif/error.hpp"

namespace tcif {

namespace fs = std::filesystem;

namespace {

std::map<std::string, fs::path> json_files(const fs::path& dir) {
  std::map<std::string, fs::path> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") out[e.path().stem().string()] = e.path();
  return out;
}

const json& expect(const Corpus& c, const std::string& group, const std::string& name, const std::string& key) {
  const json& g = c.expected.at(group);
  if (!g.contains(name) || !g.at(name).contains(key))
    throw Error(Errc::malformed_input, "expected.json has no " + group + "/" + name + "/" + key);
  return g.at(name).at(key);
}

Check make(int criterion, std::string name, std::string file, json expected, json actual, std::string provenance) {
  Check k;
  k.criterion = criterion;
  k.name = std::move(name);
  k.file = std::move(file);
  k.pass = expected == actual;
  k.expected = std::move(expected);
  k.actual = std::move(actual);
  k.provenance = std::move(provenance);
  return k;
}

// A thrown error becomes a failed check.
template <typename F>
Check guarded(int criterion, const std::string& name, const std::string& file, F body) {
  try {
    return body();
  } catch (const std::exception& e) {
    Check k;
    k.criterion = criterion;
    k.name = name;
    k.file = file;
    k.actual = {{"error", e.what()}};
    k.provenance = "exception";
    return k;
  }
}

std::string tci_file(const std::string& name) { return "tci/" + name + ".json"; }
std::string schematic_file(const std::string& name) { return "schematic/" + name + ".json"; }

int compile_level(const TCI& t) { return std::max(1, classify_tci(t).pi - 1); }

std::vector<Check> model_counts(const Corpus& c) {
  std::vector<Check> out;
  for (const auto& [name, t] : c.tcis)
    out.push_back(guarded(1, "model count", tci_file(name), [&] {
      return make(1, "model count", tci_file(name), expect(c, "tci", name, "models"), enumerate_models(t).size(),
                  "enumerate_models");
    }));
  return out;
}

std::vector<Check> diagram_bijection(const Corpus& c) {
  std::vector<Check> out;
  for (const auto& [name, t] : c.tcis)
    out.push_back(guarded(2, "diagram bijection", tci_file(name), [&] {
      auto models = enumerate_models(t);
      std::set<Condition> seen;
      std::size_t failures = 0;
      for (const auto& m : models) {
        Condition d = sigma_diagram(t, m);
        if (!seen.insert(d).second) ++failures;
        if (recover_model(t, d) != m) ++failures;
      }
      json expected = {{"models", models.size()}, {"distinct_diagrams", models.size()}, {"failures", 0}};
      json actual = {{"models", models.size()}, {"distinct_diagrams", seen.size()}, {"failures", failures}};
      return make(2, "diagram bijection", tci_file(name), expected, actual, "sigma_diagram/recover_model");
    }));
  return out;
}

std::vector<Check> compiler_bijection(const Corpus& c) {
  std::vector<Check> out;
  for (const auto& [name, t] : c.tcis) {
    int n = compile_level(t);
    if (n > 2) continue;
    std::string label = "compile to Sigma_" + std::to_string(n);
    out.push_back(guarded(3, label, tci_file(name), [&] {
      CompiledTCI ct = compile_pi_to_sigma(t, n);
      BijectionCheck b = verify_bijection(ct);
      bool in_class = classify_tci(ct.output).contains({QuantClass::Side::sigma, n});
      json expected = {{"sigma_n", true}, {"input_models", b.input_models}, {"output_models", b.input_models},
                       {"roundtrip_failures", 0}};
      json actual = {{"sigma_n", in_class}, {"input_models", b.input_models}, {"output_models", b.output_models},
                     {"roundtrip_failures", b.failures.size()}};
      return make(3, label, tci_file(name), expected, actual, "compile_pi_to_sigma/verify_bijection");
    }));
  }
  return out;
}

std::vector<Check> encoder_biconditional(const Corpus& c) {
  std::vector<Check> out;
  for (const auto& [name, P] : c.posets) {
    if (P.size() > 6) continue;
    std::string file = "posets/" + name + ".json";
    out.push_back(guarded(4, "encoder biconditional", file, [&] {
      std::set<std::vector<std::string>> filters, interpretations;
      for (const auto& f : enumerate_generic_filters(P)) filters.insert(names_of(P, f));
      TCI t = encode_forcing_tci(P);
      for (const auto& m : enumerate_models(t)) interpretations.insert(names_of(P, generic_of_model(P, m)));
      json expected = {{"count", expect(c, "posets", name, "generic_filters")}, {"filters", filters}};
      json actual = {{"count", interpretations.size()}, {"filters", interpretations}};
      return make(4, "encoder biconditional", file, expected, actual, "encode_forcing_tci/enumerate_generic_filters");
    }));
  }
  return out;
}

std::vector<Check> generic_models(const Corpus& c) {
  std::vector<Check> out;
  for (const auto& [name, t] : c.tcis)
    out.push_back(guarded(5, "generic filters are models", tci_file(name), [&] {
      GenericCheck g = generic_model_check(t);
      json expected = {{"conditions", expect(c, "tci", name, "conditions")},
                       {"filters", expect(c, "tci", name, "models")},
                       {"failures", json::array()}};
      json actual = {{"conditions", g.conditions}, {"filters", g.filters.size()}, {"failures", g.failures}};
      return make(5, "generic filters are models", tci_file(name), expected, actual,
                  "generic_model_check (" + g.route + ")");
    }));
  return out;
}

std::vector<Check> derivative_traces(const Corpus& c) {
  std::vector<Check> out;
  out.push_back(guarded(6, "derivative trace", tci_file("ab"), [&] {
    DerivativeTrace tr = compute_derivative(c.tcis.at("ab"));
    return make(6, "derivative trace", tci_file("ab"), json{{"fixpoint", 1}, {"top_empty", true}},
                json{{"fixpoint", tr.fixpoint}, {"top_empty", tr.top_empty}}, "compute_derivative");
  }));
  for (const auto& [name, t] : c.schematic) {
    out.push_back(guarded(6, "derivative trace", schematic_file(name), [&] {
      DerivativeTrace tr = compute_derivative(t);
      json expected = {{"fixpoint", expect(c, "schematic", name, "fixpoint")},
                       {"top_empty", expect(c, "schematic", name, "top_empty")}};
      json actual = {{"fixpoint", tr.fixpoint}, {"top_empty", tr.top_empty}};
      if (c.expected.at("schematic").at(name).contains("omega_rank")) {
        expected["omega_rank"] = expect(c, "schematic", name, "omega_rank");
        auto r = determination_rank(t, NatSet::omega());
        actual["omega_rank"] = r ? json(*r) : json();
      }
      if (!tr.top_empty) {
        // Every top condition over indices below 6 splits; 3^6 candidates.
        TrichotomyResult r = classify_trichotomy(t, default_split_window, 1);
        auto fam = make_family(t);
        std::size_t in_top = 0;
        for (const auto& p : window_conditions(*fam, default_split_window))
          if (fam->stage(tr.fixpoint).contains(p)) ++in_top;
        expected["split_witnesses"] = in_top;
        actual["split_witnesses"] = r.split_checked;
      }
      return make(6, "derivative trace", schematic_file(name), expected, actual, "compute_derivative");
    }));
    out.push_back(guarded(6, "stage-0 truncation cross-check", schematic_file(name), [&] {
      TruncationCheck k = truncation_check(*make_family(t));
      return make(6, "stage-0 truncation cross-check", schematic_file(name), json{{"failures", json::array()}},
                  json{{"failures", k.failures}}, "truncation_check (" + std::to_string(k.conditions) + " conditions)");
    }));
  }
  return out;
}

std::vector<Check> trichotomy(const Corpus& c) {
  std::vector<Check> out;
  for (const auto& [name, t] : c.tcis)
    out.push_back(guarded(7, "trichotomy", tci_file(name), [&] {
      TrichotomyResult r = classify_trichotomy(t);
      return make(7, "trichotomy", tci_file(name), json{{"verdict", expect(c, "tci", name, "verdict")}},
                  json{{"verdict", verdict_name(r.verdict)}}, "classify_trichotomy");
    }));
  for (const auto& [name, t] : c.schematic)
    out.push_back(guarded(7, "trichotomy", schematic_file(name), [&] {
      TrichotomyResult r = classify_trichotomy(t);
      json expected = {{"verdict", expect(c, "schematic", name, "verdict")}};
      json actual = {{"verdict", verdict_name(r.verdict)}};
      if (r.verdict == Verdict::continuum) {
        expected["scheme_leaves"] = 1024;
        expected["leaves_pairwise_incompatible"] = true;
        expected["leaves_meet_first_10"] = true;
        actual["scheme_leaves"] = r.scheme_leaves;
        actual["leaves_pairwise_incompatible"] = r.leaves_incompatible;
        actual["leaves_meet_first_10"] = r.leaves_meet_family;
      }
      return make(7, "trichotomy", schematic_file(name), expected, actual, "classify_trichotomy");
    }));
  return out;
}

std::vector<Check> witness(const Corpus& c) {
  std::vector<Check> out;
  TCI fallback = encode_forcing_tci(c.posets.at("singleton"));
  out.push_back(guarded(8, "witness map, inconsistent", tci_file("falsum"), [&] {
    WitnessResult w = witness_map(c.tcis.at("falsum"), fallback);
    bool same = w.tci && tci_to_json(*w.tci) == tci_to_json(fallback);
    return make(8, "witness map, inconsistent", tci_file("falsum"),
                json{{"branch", "inconsistent"}, {"returns_fallback", true}},
                json{{"branch", w.branch}, {"returns_fallback", same}}, "witness_map");
  }));
  out.push_back(guarded(8, "witness map, empty top", tci_file("ab"), [&] {
    WitnessResult w = witness_map(c.tcis.at("ab"), fallback);
    json models = w.tci ? json(enumerate_models(*w.tci).size()) : json();
    return make(8, "witness map, empty top", tci_file("ab"), json{{"branch", "empty_top"}, {"models", 1}},
                json{{"branch", w.branch}, {"models", models}}, "witness_map/enumerate_models");
  }));
  out.push_back(guarded(8, "witness map, nonempty top", schematic_file("cohen"), [&] {
    WitnessResult w = witness_map(c.schematic.at("cohen"), fallback);
    return make(8, "witness map, nonempty top", schematic_file("cohen"),
                json{{"branch", "symbolic_top"}, {"handle", "forcing(P(cohen))"}},
                json{{"branch", w.branch}, {"handle", w.handle ? json(*w.handle) : json()}}, "witness_map");
  }));
  return out;
}

HFSet ackermann(std::uint64_t k) {
  std::vector<HFSet> ms;
  for (std::uint64_t i = 0; k >> i; ++i)
    if (k >> i & 1) ms.push_back(ackermann(i));
  return HFSet::of(std::move(ms));
}

std::vector<Check> codec() {
  std::vector<Check> out;
  out.push_back(guarded(9, "decode(encode(x)) = x", "", [&] {
    std::size_t tried = 0, failures = 0, max_rank = 0;
    for (std::uint64_t k = 0; k < 10000; ++k) {
      HFSet x = ackermann(k);
      max_rank = std::max<std::size_t>(max_rank, static_cast<std::size_t>(x.rank()));
      ++tried;
      if (decode_set(encode_set(x)) != x) ++failures;
    }
    return make(9, "decode(encode(x)) = x", "", json{{"candidates", 10000}, {"max_rank", 4}, {"failures", 0}},
                json{{"candidates", tried}, {"max_rank", max_rank}, {"failures", failures}}, "encode_set/decode_set");
  }));
  out.push_back(guarded(9, "pair/unpair roundtrip", "", [&] {
    std::size_t failures = 0;
    for (std::uint64_t a = 0; a < 300; ++a)
      for (std::uint64_t b = 0; b < 300; ++b)
        if (unpair(pair(a, b)) != std::pair{a, b}) ++failures;
    for (std::uint64_t n = 0; n < 100000; ++n) {
      auto [a, b] = unpair(n);
      if (pair(a, b) != n) ++failures;
    }
    return make(9, "pair/unpair roundtrip", "", json{{"failures", 0}}, json{{"failures", failures}}, "pair/unpair");
  }));
  return out;
}

}  // namespace

Corpus load_corpus(const std::string& dir) {
  Corpus c;
  c.dir = dir;
  fs::path root(dir);
  if (!fs::is_directory(root)) throw Error(Errc::malformed_input, "corpus directory '" + dir + "' not found");
  for (const auto& [name, p] : json_files(root / "tci")) {
    c.tcis.emplace(name, tci_from_json(read_json_file(p.string())));
    c.files.push_back("tci/" + p.filename().string());
  }
  for (const auto& [name, p] : json_files(root / "posets")) {
    c.posets.emplace(name, poset_from_json(read_json_file(p.string())));
    c.files.push_back("posets/" + p.filename().string());
  }
  for (const auto& [name, p] : json_files(root / "schematic")) {
    c.schematic.emplace(name, tci_from_json(read_json_file(p.string())));
    c.files.push_back("schematic/" + p.filename().string());
  }
  if (c.tcis.empty() && c.posets.empty() && c.schematic.empty())
    throw Error(Errc::malformed_input, "corpus directory '" + dir + "' holds no documents");
  c.expected = read_json_file((root / "expected.json").string());
  c.files.push_back("expected.json");
  std::sort(c.files.begin(), c.files.end());
  for (const char* name : {"ab", "sym", "falsum"})
    if (!c.tcis.count(name)) throw Error(Errc::malformed_input, std::string("corpus lacks tci/") + name + ".json");
  for (const char* name : {"cohen", "initial_segment"})
    if (!c.schematic.count(name))
      throw Error(Errc::malformed_input, std::string("corpus lacks schematic/") + name + ".json");
  if (!c.posets.count("singleton")) throw Error(Errc::malformed_input, "corpus lacks posets/singleton.json");
  return c;
}

std::vector<Check> run_criterion(const Corpus& c, int criterion) {
  switch (criterion) {
    case 1: return model_counts(c);
    case 2: return diagram_bijection(c);
    case 3: return compiler_bijection(c);
    case 4: return encoder_biconditional(c);
    case 5: return generic_models(c);
    case 6: return derivative_traces(c);
    case 7: return trichotomy(c);
    case 8: return witness(c);
    case 9: return codec();
  }
  throw Error(Errc::malformed_input, "no corpus check for criterion " + std::to_string(criterion));
}

json check_to_json(const Check& c) {
  return {{"criterion", c.criterion}, {"name", c.name},         {"file", c.file},
          {"expected", c.expected},   {"actual", c.actual},     {"pass", c.pass},
          {"provenance", c.provenance}};
}

}  // namespace tcif

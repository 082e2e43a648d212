// tci-forge: subcommand front end over the tcif library. Reports are JSON with
// sorted keys, so identical inputs give byte-identical output.

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "tcif/bridge.hpp"
#include "tcif/codec.hpp"
#include "tcif/compiler.hpp"
#include "tcif/error.hpp"
#include "tcif/io.hpp"
#include "tcif/verify.hpp"

using namespace tcif;
namespace fs = std::filesystem;

namespace {

constexpr const char* tool_version = "0.1.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::malformed_input, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return out.str();
}

struct Options {
  std::string in, out, fallback, model, formula, set, code, corpus, start;
  std::size_t cap = default_poset_cap;
  int depth = -1;
  int level = 1;
  bool seedless = false, trace = false, minimal = false, table = false;
};

class Report {
 public:
  explicit Report(std::vector<std::string> argv) : argv_(std::move(argv)) {}

  void input(const std::string& label, const std::string& path) {
    inputs_[label] = {{"path", path}, {"sha256", sha256_hex(slurp(path))}};
  }
  json& result() { return result_; }
  void note(const std::string& key, const std::string& op) { provenance_[key] = op; }

  json build() const {
    json j;
    j["command"] = argv_;
    j["inputs"] = inputs_;
    j["result"] = result_;
    j["provenance"] = provenance_;
    j["tool_version"] = tool_version;
    return j;
  }

 private:
  std::vector<std::string> argv_;
  json inputs_ = json::object();
  json result_ = json::object();
  json provenance_ = json::object();
};

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object() && !j.empty()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
  } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else {
    rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

std::string render_table(const json& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report.at("result"), "", rows);
  std::size_t w = 0;
  for (const auto& r : rows) w = std::max(w, r.first.size());
  std::ostringstream out;
  for (const auto& [k, v] : rows) out << std::left << std::setw(static_cast<int>(w)) << k << "  " << v << "\n";
  return out.str();
}

void emit(const Options& o, const json& report) {
  std::string text = o.table ? render_table(report) : report.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw Error(Errc::malformed_input, "cannot write '" + o.out + "'");
    f << text;
  }
}

void write_json(const std::string& path, const json& j) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::malformed_input, "cannot write '" + path + "'");
  f << j.dump(2) << "\n";
}

bool is_poset_doc(const json& j) { return j.is_object() && j.contains("elements") && j.contains("le"); }

json conditions_json(const std::vector<Condition>& cs) {
  json a = json::array();
  for (const auto& c : cs) a.push_back(condition_to_json(c));
  return a;
}

json trace_json(const DerivativeTrace& tr, bool full) {
  json stages = json::array();
  for (const auto& s : tr.stages) {
    json j;
    j["stage"] = s.index;
    if (s.diagrams) j["diagrams"] = *s.diagrams;
    if (s.conditions) j["conditions"] = *s.conditions;
    if (s.atoms) j["atoms"] = *s.atoms;
    j["minimal_atom_count"] = s.minimal_atoms.size();
    if (full) j["minimal_atoms"] = conditions_json(s.minimal_atoms);
    j["atoms_note"] = s.atoms_note;
    j["survivors_note"] = s.survivors_note;
    stages.push_back(j);
  }
  return {{"stages", stages}, {"fixpoint", tr.fixpoint}, {"top_empty", tr.top_empty}};
}

TCI load_tci(Report& r, const Options& o) {
  if (o.in.empty()) throw UsageError("--in is required");
  r.input("in", o.in);
  return tci_from_json(read_json_file(o.in));
}

Poset load_poset(Report& r, const Options& o) {
  if (o.in.empty()) throw UsageError("--in is required");
  r.input("in", o.in);
  return poset_from_json(read_json_file(o.in));
}

void cmd_parse(Report& r, const Options& o) {
  TCI t = load_tci(r, o);
  json& res = r.result();
  res["tci"] = tci_to_json(t);
  if (!o.formula.empty()) {
    Formula f = parse_formula(o.formula, t.sig);
    res["formula"] = {{"prenex", print_formula(f)}, {"classes", classes_to_json(classify_formula(f))}};
    r.note("formula", "parse_formula/classify_formula");
  }
  r.note("tci", "validate_tci");
}

void cmd_models(Report& r, const Options& o) {
  TCI t = load_tci(r, o);
  auto ms = enumerate_models(t);
  json list = json::array();
  for (const auto& m : ms) list.push_back(structure_to_json(m));
  r.result()["count"] = ms.size();
  r.result()["models"] = list;
  r.result()["empty_structure_allowed"] = true;
  r.note("count", "enumerate_models");
}

void cmd_check(Report& r, const Options& o) {
  TCI t = load_tci(r, o);
  if (o.model.empty()) throw UsageError("--model is required");
  r.input("model", o.model);
  Structure m = structure_from_json(read_json_file(o.model), t.sig);
  r.result()["models_star"] = models_star(m, t);
  r.result()["structure_for_signature"] = is_structure_for(m, t.sig);
  if (models_star(m, t)) r.result()["diagram"] = condition_to_json(sigma_diagram(t, m));
  r.note("models_star", "models_star");
}

void cmd_classify(Report& r, const Options& o) {
  TCI t = load_tci(r, o);
  json per = json::array();
  for (const auto& f : t.theory) per.push_back({{"sentence", print_formula(f)}, {"classes", classes_to_json(classify_formula(f))}});
  r.result()["tci"] = classes_to_json(classify_tci(t));
  r.result()["sentences"] = per;
  r.result()["consistent"] = is_consistent(t);
  r.note("tci", "classify_tci");
  r.note("consistent", "is_consistent");
}

void cmd_compile(Report& r, const Options& o) {
  TCI t = load_tci(r, o);
  CompiledTCI c = compile_pi_to_sigma(t, o.level);
  json doc = tci_to_json(c.output);
  doc["compiled_from"] = {{"name", t.name},   {"level", c.level},          {"guard", c.guard},
                          {"constants", c.constants}, {"sha256", sha256_hex(slurp(o.in))}};
  BijectionCheck b = verify_bijection(c);
  json& res = r.result();
  res["output_name"] = c.output.name;
  res["level"] = c.level;
  res["guard"] = c.guard;
  res["constants"] = c.constants;
  res["output_classes"] = classes_to_json(classify_tci(c.output));
  res["bijection"] = {{"input_models", b.input_models}, {"output_models", b.output_models}, {"failures", b.failures}};
  if (o.out.empty()) res["document"] = doc;
  else write_json(o.out, doc);
  r.note("bijection", "verify_bijection");
  r.note("output_classes", "classify_tci");
}

void cmd_encode_poset(Report& r, const Options& o) {
  Poset P = load_poset(r, o);
  TCI t = encode_forcing_tci(P, o.cap);
  json doc = tci_to_json(t);
  r.result()["elements"] = P.size();
  if (o.out.empty()) r.result()["document"] = doc;
  else write_json(o.out, doc);
  r.note("elements", "poset_from_json");
}

void cmd_generic(Report& r, const Options& o) {
  Poset P = load_poset(r, o);
  auto fs = o.minimal ? generic_filters_via_minimal(P) : enumerate_generic_filters(P, o.cap);
  json list = json::array();
  for (const auto& f : fs) list.push_back(names_of(P, f));
  r.result()["route"] = o.minimal ? "minimal" : "scan";
  r.result()["count"] = fs.size();
  r.result()["filters"] = list;
  r.note("count", o.minimal ? "generic_filters_via_minimal" : "enumerate_generic_filters");
}

void cmd_cantor(Report& r, const Options& o) {
  if (o.in.empty()) throw UsageError("--in is required");
  int depth = o.depth < 0 ? 2 : o.depth;
  json doc = read_json_file(o.in);
  r.input("in", o.in);
  json scheme = json::object();
  if (is_poset_doc(doc)) {
    Poset P = poset_from_json(doc);
    if (P.size() == 0) throw Error(Errc::atom_encountered, "empty poset has no conditions");
    auto family = dense_subsets(P, o.cap);
    for (const auto& [key, p] : cantor_scheme(P, family, depth, o.start.empty() ? 0 : P.index(o.start))) scheme[key.empty() ? "root" : key] = P.elements()[p];
    r.result()["family"] = "all dense subsets, canonical order";
  } else {
    TCI t = tci_from_json(doc);
    auto P = literal_poset(t);
    auto family = decision_family(t, static_cast<std::size_t>(depth));
    for (const auto& [key, p] : cantor_scheme(*P, family, depth, {}))
      scheme[key.empty() ? "root" : key] = condition_to_json(p);
    json fam = json::array();
    for (const auto& l : family) fam.push_back(l.text());
    r.result()["family"] = fam;
  }
  r.result()["depth"] = depth;
  r.result()["scheme"] = scheme;
  r.note("scheme", "cantor_scheme");
}

void cmd_conditions(Report& r, const Options& o) {
  TCI t = load_tci(r, o);
  if (t.is_schematic()) {
    auto fam = make_family(t);
    int window = o.depth < 0 ? 3 : o.depth;
    std::vector<Condition> cs;
    for (auto& p : window_conditions(*fam, window))
      if (fam->stage(0).contains(p)) cs.push_back(std::move(p));
    r.result()["window"] = window;
    r.result()["count"] = cs.size();
    r.result()["conditions"] = conditions_json(cs);
    r.note("count", "family stage-0 membership over the index window");
    return;
  }
  auto cs = build_conditions(t);
  r.result()["count"] = cs.size();
  r.result()["conditions"] = conditions_json(cs);
  r.note("count", "build_conditions");
}

void cmd_derive(Report& r, const Options& o) {
  TCI t = load_tci(r, o);
  r.result() = trace_json(compute_derivative(t), o.trace);
  r.note("stages", t.is_schematic() ? "schematic family oracle" : "compute_derivative");
}

void cmd_trichotomy(Report& r, const Options& o) {
  TCI t = load_tci(r, o);
  TrichotomyResult tr = classify_trichotomy(t, default_split_window, o.depth < 0 ? default_scheme_depth : o.depth);
  json& res = r.result();
  res["verdict"] = verdict_name(tr.verdict);
  res["trace"] = trace_json(tr.trace, true);
  if (!t.is_schematic()) res["model_count"] = tr.model_count;
  json ranks = json::array();
  for (const auto& rm : tr.ranks) ranks.push_back({{"model", rm.model}, {"rank", rm.rank ? json(*rm.rank) : json()}});
  res["ranks"] = ranks;
  if (tr.verdict == Verdict::continuum) {
    res["atomless_certificate"] = {{"window", tr.split_window}, {"splitting_witnesses", tr.split_checked}};
    res["cantor_scheme"] = {{"leaves", tr.scheme_leaves},
                            {"pairwise_incompatible", tr.leaves_incompatible},
                            {"leaves_meet_family", tr.leaves_meet_family}};
  }
  r.note("verdict", "classify_trichotomy");
  r.note("ranks", "determination_rank");
}

void cmd_witness(Report& r, const Options& o) {
  TCI t = load_tci(r, o);
  if (o.fallback.empty()) throw UsageError("--fallback is required");
  r.input("fallback", o.fallback);
  TCI fb = tci_from_json(read_json_file(o.fallback));
  WitnessResult w = witness_map(t, fb, o.cap);
  json& res = r.result();
  res["branch"] = w.branch;
  res["certificate"] = w.certificate;
  if (w.handle) res["handle"] = *w.handle;
  if (w.tci) {
    res["models"] = enumerate_models(*w.tci).size();
    if (o.out.empty()) res["document"] = tci_to_json(*w.tci);
    else write_json(o.out, tci_to_json(*w.tci));
    r.note("models", "enumerate_models");
  }
  r.note("branch", "witness_map");
}

void cmd_generic_check(Report& r, const Options& o) {
  TCI t = load_tci(r, o);
  GenericCheck g = generic_model_check(t, o.cap);
  json filters = json::array();
  for (const auto& f : g.filters)
    filters.push_back({{"size", f.filter_size},
                       {"union", condition_to_json(f.generator)},
                       {"model", f.model_index ? json(*f.model_index) : json()}});
  json& res = r.result();
  res["route"] = g.route;
  res["conditions"] = g.conditions;
  res["models"] = g.models;
  res["filters"] = filters;
  res["failures"] = g.failures;
  res["ok"] = g.ok();
  r.note("conditions", "build_conditions");
  r.note("models", "enumerate_models");
  r.note("filters", g.route == "scan" ? "enumerate_generic_filters" : "minimal conditions of P(T)");
}

void cmd_codec(Report& r, const Options& o, bool encode) {
  if (encode) {
    HFSet x = parse_set(o.set);
    Code c = encode_set(x);
    r.result() = {{"set", print_set(x)}, {"code", c}, {"code_text", print_code(c)}, {"rank", x.rank()}};
    r.note("code", "encode_set");
  } else {
    Code c = parse_code(o.code);
    HFSet x = decode_set(c);
    r.result() = {{"code", c}, {"set", print_set(x)}, {"rank", x.rank()}};
    r.note("set", "decode_set");
  }
}

int cmd_corpus_verify(Report& r, const Options& o) {
  std::string dir = o.corpus.empty() ? std::string(TCIF_DEFAULT_CORPUS) : o.corpus;
  if (!fs::is_directory(dir) || fs::is_empty(dir)) throw UsageError("corpus directory '" + dir + "' is missing or empty");
  Corpus c = load_corpus(dir);
  for (const auto& f : c.files) r.input(f, (fs::path(dir) / f).string());
  json checks = json::array();
  std::size_t passed = 0, total = 0;
  for (int k = 1; k <= corpus_criteria; ++k)
    for (const auto& ch : run_criterion(c, k)) {
      checks.push_back(check_to_json(ch));
      ++total;
      passed += ch.pass ? 1 : 0;
    }
  r.result() = {{"checks", checks}, {"passed", passed}, {"total", total}, {"ok", passed == total}};
  r.note("checks", "run_criterion; each check names its producing operation");
  return passed == total ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Theories with constraints in interpretation, forcing posets and the derivative"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* s) {
    s->add_option("--in", o.in, "input document");
    s->add_option("--out", o.out, "write output here instead of stdout");
    s->add_option("--cap", o.cap, "enumeration cap");
    s->add_option("--depth", o.depth, "scheme depth or index window");
    s->add_flag("--seedless", o.seedless, "accepted for scripts; nothing here is random");
    s->add_flag("--table", o.table, "plain key/value rendering instead of JSON");
    return s;
  };

  auto* parse = common(app.add_subcommand("parse", "validate a TCI, optionally parse a sentence against it"));
  parse->add_option("--formula", o.formula);
  auto* models = common(app.add_subcommand("models", "enumerate models"));
  auto* check = common(app.add_subcommand("check", "test a structure against a TCI"));
  check->add_option("--model", o.model)->required();
  auto* classify = common(app.add_subcommand("classify", "quantifier classes of the theory"));
  auto* compile = common(app.add_subcommand("compile", "compile Pi_{n+1} to Sigma_n"));
  compile->add_option("--level", o.level)->required();
  auto* encode = common(app.add_subcommand("encode-poset", "TCI whose models are the generic filters"));
  auto* generic = common(app.add_subcommand("generic", "generic filters of a finite poset"));
  generic->add_flag("--minimal", o.minimal, "principal filters of minimal elements, no cap");
  auto* cantor = common(app.add_subcommand("cantor", "Cantor scheme"));
  cantor->add_option("--start", o.start, "start element (explicit posets)");
  auto* conditions = common(app.add_subcommand("conditions", "conditions of P(T)"));
  auto* derive = common(app.add_subcommand("derive", "derivative of P(T)"));
  derive->add_flag("--trace", o.trace, "list minimal atoms at each stage");
  auto* trich = common(app.add_subcommand("trichotomy", "EMPTY, SINGLETON_V or CONTINUUM"));
  auto* witness = common(app.add_subcommand("witness", "witness map"));
  witness->add_option("--fallback", o.fallback)->required();
  auto* gcheck = common(app.add_subcommand("generic-check", "generic filters of P(T) against models"));
  auto* codec = app.add_subcommand("codec", "hereditarily finite set codec");
  codec->require_subcommand(1);
  auto* cenc = common(codec->add_subcommand("encode", "set to code"));
  cenc->add_option("--set", o.set)->required();
  auto* cdec = common(codec->add_subcommand("decode", "code to set"));
  cdec->add_option("--code", o.code)->required();
  auto* verify = common(app.add_subcommand("corpus-verify", "run every corpus check"));
  verify->add_option("--corpus", o.corpus, "corpus directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::vector<std::string> args(argv + 1, argv + argc);
  Report r(args);
  int status = 0;
  try {
    if (*parse) cmd_parse(r, o);
    else if (*models) cmd_models(r, o);
    else if (*check) cmd_check(r, o);
    else if (*classify) cmd_classify(r, o);
    else if (*compile) cmd_compile(r, o);
    else if (*encode) cmd_encode_poset(r, o);
    else if (*generic) cmd_generic(r, o);
    else if (*cantor) cmd_cantor(r, o);
    else if (*conditions) cmd_conditions(r, o);
    else if (*derive) cmd_derive(r, o);
    else if (*trich) cmd_trichotomy(r, o);
    else if (*witness) cmd_witness(r, o);
    else if (*gcheck) cmd_generic_check(r, o);
    else if (*cenc) cmd_codec(r, o, true);
    else if (*cdec) cmd_codec(r, o, false);
    else if (*verify) status = cmd_corpus_verify(r, o);
    // --out on compile, encode-poset and witness names the produced document; the report still goes to stdout
    Options eo = o;
    if (*compile || *encode || *witness) eo.out.clear();
    emit(eo, r.build());
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    json err = {{"error", {{"code", errc_name(e.code())}, {"message", e.what()}}}, {"command", args},
                {"tool_version", tool_version}};
    std::cout << err.dump(2) << "\n";
    return 1;
  }
  return status;
}

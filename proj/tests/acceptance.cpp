// Acceptance run: one line per criterion with its measured time and limit.
// Exit status is nonzero when any criterion fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "oracle.hpp"
#include "tcif/verify.hpp"

using namespace tcif;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  double seconds = 0;
  std::string detail;
};

struct Run {
  int status = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  Run r;
  std::string cmd = std::string(TCIF_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double s) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(3) << s << "s";
  return o.str();
}

std::string failures_of(const std::vector<Check>& checks) {
  std::string out;
  for (const auto& c : checks)
    if (!c.pass)
      out += "\n    " + c.name + " [" + c.file + "] expected " + c.expected.dump() + " got " + c.actual.dump();
  return out;
}

Outcome corpus_criterion(const Corpus& c, int k, double limit) {
  auto t0 = Clock::now();
  auto checks = run_criterion(c, k);
  Outcome o;
  o.seconds = since(t0);
  std::size_t ok = 0;
  for (const auto& ch : checks) ok += ch.pass ? 1 : 0;
  o.pass = ok == checks.size() && !checks.empty() && (limit <= 0 || o.seconds < limit);
  o.detail = std::to_string(ok) + "/" + std::to_string(checks.size()) + " checks";
  if (limit > 0 && o.seconds >= limit) o.detail += ", over time limit";
  o.detail += failures_of(checks);
  return o;
}

// Criterion 1 goes through the CLI and is compared against the independent enumerator as well.
Outcome model_counts(const Corpus& c) {
  Outcome o;
  o.pass = true;
  for (const auto& [name, frozen] : std::vector<std::pair<std::string, std::size_t>>{{"ab", 4}, {"sym", 13}}) {
    auto t0 = Clock::now();
    Run r = run_cli("models --in " + c.dir + "/tci/" + name + ".json");
    double s = since(t0);
    std::size_t cli = 0;
    try {
      cli = json::parse(r.out).at("result").at("count").get<std::size_t>();
    } catch (const std::exception&) {
      o.pass = false;
    }
    std::size_t brute = oracle::models(c.tcis.at(name)).size();
    bool ok = r.status == 0 && cli == frozen && brute == frozen && s < 1.0;
    o.pass = o.pass && ok;
    o.seconds += s;
    o.detail += (o.detail.empty() ? "" : ", ") + name + "=" + std::to_string(cli) + " (oracle " +
                std::to_string(brute) + ", frozen " + std::to_string(frozen) + ", " + fmt(s) + " < 1s)";
  }
  Outcome rest = corpus_criterion(c, 1, 0);
  o.pass = o.pass && rest.pass;
  o.detail += "; corpus " + rest.detail;
  return o;
}

Outcome determinism(const Corpus& c) {
  Outcome o;
  auto t0 = Clock::now();
  Run a = run_cli("corpus-verify --corpus " + c.dir);
  Run b = run_cli("corpus-verify --corpus " + c.dir);
  o.seconds = since(t0);
  o.pass = a.status == 0 && b.status == 0 && !a.out.empty() && a.out == b.out;
  o.detail = "two corpus-verify runs, exit " + std::to_string(a.status) + "/" + std::to_string(b.status) + ", " +
             std::to_string(a.out.size()) + " bytes, " + (a.out == b.out ? "byte-identical" : "DIFFERENT");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : TCIF_CORPUS_DIR;
  Corpus c = load_corpus(dir);

  struct Row {
    int k;
    const char* title;
    double limit;  // seconds; 0 means none
  };
  const std::vector<Row> rows{
      {1, "model-count oracle", 1.0},          {2, "diagram bijection", 5.0},
      {3, "compiler bijection", 10.0},         {4, "encoder biconditional", 30.0},
      {5, "generic-model property", 60.0},     {6, "derivative traces", 30.0},
      {7, "trichotomy", 60.0},                 {8, "witness map", 0},
      {9, "codec roundtrips", 10.0},           {10, "determinism", 0},
  };

  int failed = 0;
  for (const auto& row : rows) {
    Outcome o;
    if (row.k == 1) o = model_counts(c);
    else if (row.k == 10) o = determinism(c);
    else o = corpus_criterion(c, row.k, row.limit);
    std::string limit = row.limit > 0 ? " (limit " + fmt(row.limit) + (row.k == 1 ? " each" : "") + ")" : "";
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << row.k << "  " << std::left << std::setw(24)
              << row.title << std::right << fmt(o.seconds) << limit << "  " << o.detail << "\n";
    failed += o.pass ? 0 : 1;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << "\n";
  return failed ? 1 : 0;
}

// sievedyn: command-line front end.
//
//   sievedyn cycle     --p 13 [--p0 5] [--stream] [--verify] [--count-only] [--out f]
//   sievedyn model     --s 6,6,6 --p0 37 [--pk 35963] [--stride 100] [--out curve.csv]
//   sievedyn census    --stages 35537..35969 --constellations list.txt [--compare]
//   sievedyn instances --decompose N --ladder 17..37 | --s 2 --enumerate --pk 7 | ...
//
// Exit codes: 0 success, 1 validation error, 2 resource or bound error.

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sievedyn/census.hpp"
#include "sievedyn/crt.hpp"
#include "sievedyn/cycle.hpp"
#include "sievedyn/cycle_io.hpp"
#include "sievedyn/errors.hpp"
#include "sievedyn/gap_stream.hpp"
#include "sievedyn/population_model.hpp"
#include "sievedyn/populations.hpp"
#include "sievedyn/primes.hpp"

#ifndef SIEVEDYN_VERSION
#define SIEVEDYN_VERSION "unknown"
#endif

using namespace sievedyn;
using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

// -- run manifest --------------------------------------------------------------

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return hex.str();
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

struct Run {
  std::string command;
  std::string out;            // primary output file, empty for stdout
  std::string manifest_path;  // explicit --manifest
  std::vector<std::string> inputs;
  std::vector<std::string> argv;
  json config = json::object();
  json results = json::object();
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  std::string started = utc_now();

  std::string manifest_file() const {
    if (!manifest_path.empty()) return manifest_path;
    return out.empty() ? std::string{} : out + ".manifest.json";
  }

  static std::string base_name(const std::string& path) {
    const auto slash = path.find_last_of('/');
    return slash == std::string::npos ? path : path.substr(slash + 1);
  }

  // First line of CSV outputs.
  std::string csv_reference() const {
    const std::string m = manifest_file();
    return m.empty() ? std::string{} : "# manifest: " + base_name(m) + "\n";
  }

  void write_manifest() const {
    const std::string path = manifest_file();
    if (path.empty()) return;
    json m;
    m["schema_version"] = kSchemaVersion;
    m["code_version"] = SIEVEDYN_VERSION;
    m["command"] = command;
    m["argv"] = argv;
    m["config"] = config;
    m["started_utc"] = started;
    m["finished_utc"] = utc_now();
    m["elapsed_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json hashes = json::object();
    for (const auto& in : inputs) hashes[in] = sha256_file(in);
    m["input_sha256"] = hashes;
    m["outputs"] = out.empty() ? json::array() : json::array({out});
    m["results"] = results;
    std::ofstream f(path);
    if (!f) throw ValidationError("cannot write " + path);
    f << m.dump(2) << '\n';
  }
};

// Output target: a file when a path is given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path, bool binary = false) {
    if (!path.empty()) {
      file_.open(path, binary ? std::ios::binary : std::ios::out);
      if (!file_) throw ValidationError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text, const char* what) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw ValidationError(std::string(what) + " must look like A..B");
  try {
    std::size_t used = 0;
    const std::string a = text.substr(0, dots);
    const std::string b = text.substr(dots + 2);
    const std::uint64_t lo = std::stoull(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    const std::uint64_t hi = std::stoull(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    if (lo > hi) throw ValidationError(std::string(what) + " is empty: " + text);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw ValidationError(std::string("cannot parse ") + what + " '" + text + "'");
  }
}

void require_prime(std::uint64_t p, const char* what) {
  if (!is_prime(p)) throw ValidationError(std::string(what) + " must be prime (got " + std::to_string(p) + ")");
}

// -- cycle -------------------------------------------------------------------

struct CycleArgs {
  std::uint64_t p = 0;
  std::uint64_t p0 = 0;
  bool stream = false;
  bool verify = false;
  bool count_only = false;
  std::string format = "csv";
  std::string out;
  std::uint64_t budget = kDefaultCycleBudget;
};

json report_json(const CycleReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return checks;
}

// Checks that need only one pass over a stream; symmetry needs the full cycle.
CycleReport verify_stream(GapStream& s) {
  std::uint64_t n = 0;
  BigInt span = 0;
  std::uint64_t chunk = 0;
  Gap first = 0, last = 0;
  for (Gap g : s) {
    if (n == 0) first = g;
    last = g;
    ++n;
    chunk += g;
    if (chunk > (std::uint64_t{1} << 62)) {
      span += chunk;
      chunk = 0;
    }
  }
  span += chunk;
  const std::uint64_t p = s.stage_prime();
  CycleReport r;
  r.checks.push_back({"length", BigInt(n) == s.length(), "length " + std::to_string(n) + ", expected " + s.length().str()});
  r.checks.push_back({"span", span == primorial(p), "span " + span.str() + ", expected " + primorial(p).str()});
  r.checks.push_back({"first_gap", first + std::uint64_t{1} == next_prime_after(p),
                      "g1 = " + std::to_string(first) + ", next prime " + std::to_string(next_prime_after(p))});
  r.checks.push_back({"last_gap", last == 2, "last gap " + std::to_string(last)});
  return r;
}

int run_cycle(const CycleArgs& a, Run& run) {
  require_prime(a.p, "--p");
  const std::uint64_t p0 = a.p0 ? a.p0 : std::min<std::uint64_t>(a.p, kMaxBootstrapPrime);
  run.config = {{"p", a.p}, {"p0", p0}, {"stream", a.stream}, {"verify", a.verify},
                {"count_only", a.count_only}, {"format", a.format}, {"budget", a.budget}};
  if (a.format != "csv" && a.format != "bin") throw ValidationError("--format must be csv or bin");
  if (a.format == "bin" && a.out.empty()) throw ValidationError("binary output needs --out");

  if (a.stream) {
    GapStream s = stream_gaps(a.p, p0);
    if (a.verify) {
      const CycleReport r = verify_stream(s);
      for (const auto& c : r.checks) std::cout << c.name << ": " << (c.passed ? "PASS" : "FAIL") << " (" << c.detail << ")\n";
      std::cout << "symmetry: not checked in stream mode\n";
      run.results["checks"] = report_json(r);
      return r.all_passed() ? 0 : 1;
    }
    if (a.count_only) {
      std::uint64_t n = 0;
      for ([[maybe_unused]] Gap g : s) ++n;
      std::cout << n << '\n';
      run.results["gaps"] = n;
      return 0;
    }
    Sink sink(a.out, a.format == "bin");
    if (a.format == "bin") {
      write_cycle_binary(sink.stream(), s);
    } else {
      sink.stream() << run.csv_reference();
      write_cycle_csv(sink.stream(), s);
    }
    run.results["gaps"] = s.produced();
    return 0;
  }

  const GapCycle c = build_cycle(a.p, p0, a.budget);
  if (a.verify) {
    const CycleReport r = verify_cycle(c);
    for (const auto& ch : r.checks) std::cout << ch.name << ": " << (ch.passed ? "PASS" : "FAIL") << " (" << ch.detail << ")\n";
    run.results["checks"] = report_json(r);
    return r.all_passed() ? 0 : 1;
  }
  if (a.count_only) {
    std::cout << c.length() << '\n';
    run.results["gaps"] = c.length();
    return 0;
  }
  Sink sink(a.out, a.format == "bin");
  if (a.format == "bin") {
    write_cycle_binary(sink.stream(), c);
  } else {
    sink.stream() << run.csv_reference();
    write_cycle_csv(sink.stream(), c);
  }
  run.results["gaps"] = c.length();
  return 0;
}

// -- model -------------------------------------------------------------------

struct ModelArgs {
  std::string s;
  std::uint64_t p0 = 0;
  std::uint64_t pk = 0;
  std::size_t stride = 1;
  std::string out;
  std::string json_out;
  bool exact_check = false;
  std::uint64_t truncation = 1'000'000;
};

std::vector<std::string> strings_of(const std::vector<BigInt>& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

int run_model(const ModelArgs& a, Run& run) {
  const Constellation s = Constellation::parse(a.s);
  require_prime(a.p0, "--p0");
  const std::uint64_t pk = a.pk ? a.pk : a.p0;
  require_prime(pk, "--pk");
  if (pk < a.p0) throw ValidationError("--pk must not precede --p0");
  run.config = {{"s", s.to_string()}, {"p0", a.p0}, {"pk", pk}, {"stride", a.stride},
                {"exact_check", a.exact_check}, {"truncation", a.truncation}};
  require_markov_regime(s, a.p0);

  int status = 0;
  json report = asymptotics_report(s, a.truncation);
  report["p0"] = a.p0;
  report["pk"] = pk;
  report["w_spectral"] = to_string(w_asymptotic_spectral(s, a.p0));

  if (a.exact_check) {
    if (pk > 23) throw BoundError("--exact-check scans G(p#) for every stage; --pk must be <= 23");
    const PopulationCount start = scan_population(s, a.p0);
    const std::size_t dim = model_dimension(s, start.counts.size());
    const IntegerPopulation n0 = to_integer_population(start, dim);
    json stages = json::array();
    for (std::uint64_t p : primes_in_range(a.p0 + 1, pk)) {
      const auto model = advance_counts(n0, p).counts;
      const auto scan = to_integer_population(scan_population(s, p), dim).counts;
      const bool ok = model == scan;
      if (!ok) status = 1;
      stages.push_back({{"stage_prime", p}, {"model", strings_of(model)}, {"scan", strings_of(scan)}, {"equal", ok}});
      std::cerr << "p=" << p << (ok ? " model == scan" : " MISMATCH") << '\n';
    }
    report["exact_check"] = stages;
  }

  if (!a.out.empty()) {
    Sink sink(a.out);
    std::ostream& os = sink.stream();
    os << run.csv_reference();
    write_curve_csv(os, s, a.p0, pk, a.stride);
  }
  report["lambda_pk"] = to_double(lambda_param(s.length(), a.p0, pk));
  const RelativePopulation w0 = initial_population(s, a.p0);
  auto exact = [](const RelativePopulation& w) {
    json out = json::array();
    for (const auto& x : w.weights) out.push_back(to_string(x));
    return out;
  };
  report["w_p0"] = exact(w0);
  report["w_pk"] = exact(evolve(w0, pk));

  run.results = report;
  if (a.json_out.empty()) {
    std::cout << report.dump(2) << '\n';
  } else {
    std::ofstream f(a.json_out);
    if (!f) throw ValidationError("cannot write " + a.json_out);
    f << report.dump(2) << '\n';
  }
  return status;
}

// -- census ------------------------------------------------------------------

struct CensusArgs {
  std::string stages;
  std::string constellations;
  std::string out;
  bool prime_count = false;
  bool compare = false;
  std::size_t reference = 0;
  std::uint64_t lambda_p0 = 37;
};

std::vector<Constellation> read_constellations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path);
  std::vector<Constellation> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(Constellation::parse(line));
  }
  if (out.empty()) throw ValidationError(path + " lists no constellations");
  return out;
}

int run_census(const CensusArgs& a, const SieveOptions& sieve, Run& run) {
  const auto [lo, hi] = parse_range(a.stages, "--stages");
  const auto battery = read_constellations(a.constellations);
  run.inputs.push_back(a.constellations);
  json names = json::array();
  for (const auto& s : battery) names.push_back(s.to_string());
  run.config = {{"stages", a.stages}, {"constellations", names}, {"sieve_bound", sieve.bound},
                {"segment_bits", sieve.segment_bits}, {"jobs", sieve.jobs},
                {"interval_convention", "[p^2, p_next^2) half-open, runs classified by first prime"}};
  const auto intervals = survival_intervals(lo, hi);
  if (intervals.empty()) throw ValidationError("no stage primes in " + a.stages);

  if (a.compare) {
    ComparisonOptions opts{a.reference, a.lambda_p0, sieve};
    const SurvivalComparison cmp = survival_comparison(battery, lo, hi, opts);
    json rows = json::array();
    for (const auto& r : cmp.rows) {
      rows.push_back({{"constellation", r.s.to_string()}, {"census_count", r.census_count},
                      {"model_w", r.model_w}, {"census_ratio", r.census_ratio},
                      {"model_ratio", r.model_ratio}, {"deviation", r.deviation}});
    }
    json j = {{"reference", battery[cmp.reference].to_string()}, {"model_stage", cmp.model_stage},
              {"lambda", cmp.lambda}, {"lambda_p0", cmp.lambda_p0}, {"rows", rows}, {"mard", cmp.mard}};
    run.results = j;
    Sink sink(a.out);
    sink.stream() << j.dump(2) << '\n';
    return 0;
  }

  const auto records = census(battery, intervals, sieve);
  std::uint64_t primes = 0;
  for (const auto& r : records) primes += r.prime_count;
  run.results["prime_count"] = primes;
  run.results["window"] = {intervals.front().lo, intervals.back().hi};
  if (a.prime_count) {
    std::cerr << "primes in [" << intervals.front().lo << ", " << intervals.back().hi << "): " << primes << '\n';
  }
  Sink sink(a.out);
  sink.stream() << run.csv_reference();
  write_census_csv(sink.stream(), battery, records);
  return 0;
}

// -- instances ---------------------------------------------------------------

struct InstanceArgs {
  std::string decompose;
  std::string ladder;
  std::string s;
  bool enumerate = false;
  std::uint64_t p0 = 0;
  std::uint64_t pk = 0;
  std::string seed;
  std::string residues;
  std::string images;
  std::string out;
};

std::vector<ResidueChoice> parse_residues(const std::string& text) {
  std::vector<ResidueChoice> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ValidationError("residue choices look like 7:1,11:3");
    try {
      out.push_back({std::stoull(item.substr(0, colon)), std::stoull(item.substr(colon + 1))});
    } catch (const std::logic_error&) {
      throw ValidationError("cannot parse residue choice '" + item + "'");
    }
  }
  return out;
}

BigInt parse_big(const std::string& text, const char* what) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw ValidationError(std::string(what) + " must be a non-negative integer");
  }
  return BigInt(text);
}

int run_instances(const InstanceArgs& a, Run& run) {
  if (!a.decompose.empty()) {
    const BigInt gamma = parse_big(a.decompose, "--decompose");
    if (a.ladder.empty()) throw ValidationError("--decompose needs --ladder A..B");
    const auto [from, to] = parse_range(a.ladder, "--ladder");
    // Digits on q# for primes from < q <= to: base below next(from)#.
    const std::uint64_t p0 = next_prime_after(from);
    const std::uint64_t pk = next_prime_after(to);
    run.config = {{"decompose", a.decompose}, {"ladder", a.ladder}};
    const PrimorialCoordinates c = to_primorial_coordinates(gamma, p0, pk);
    run.results["coordinates"] = c.to_string();
    Sink sink(a.out);
    sink.stream() << c.to_string() << '\n';
    return 0;
  }

  if (a.s.empty()) throw ValidationError("instances needs --decompose or --s");
  const Constellation s = Constellation::parse(a.s);

  if (!a.images.empty()) {
    require_prime(a.pk, "--pk");
    const BigInt gamma = parse_big(a.images, "--images");
    const std::uint64_t p_next = next_prime_after(a.pk);
    run.config = {{"s", s.to_string()}, {"images", a.images}, {"pk", a.pk}};
    Sink sink(a.out);
    std::ostream& os = sink.stream();
    os << run.csv_reference() << "m,gamma,residue,survives\n";
    std::size_t live = 0;
    for (const auto& img : images_under_replication(s, gamma, a.pk, p_next)) {
      os << img.m << ',' << img.gamma.str() << ',' << img.residue << ',' << (img.survives ? 1 : 0) << '\n';
      live += img.survives;
    }
    run.results["survivors"] = live;
    return 0;
  }

  if (a.enumerate) {
    require_prime(a.pk, "--pk");
    const std::uint64_t p0 = a.p0 ? a.p0 : std::min<std::uint64_t>(a.pk, 5);
    run.config = {{"s", s.to_string()}, {"enumerate", true}, {"p0", p0}, {"pk", a.pk}};
    InstanceEnumerator e(s, p0, a.pk);
    Sink sink(a.out);
    std::ostream& os = sink.stream();
    os << run.csv_reference() << "gamma\n";
    std::uint64_t n = 0;
    while (auto g = e.next()) {
      os << g->str() << '\n';
      ++n;
    }
    run.results["count"] = n;
    run.results["expected"] = e.count().str();
    return 0;
  }

  if (!a.seed.empty()) {
    require_prime(a.p0, "--p0");
    const BigInt seed = parse_big(a.seed, "--seed");
    run.config = {{"s", s.to_string()}, {"seed", a.seed}, {"p0", a.p0}, {"residues", a.residues}};
    const BigInt g = instance_from_residues(s, seed, a.p0, parse_residues(a.residues));
    run.results["gamma"] = g.str();
    Sink sink(a.out);
    sink.stream() << g.str() << '\n';
    return 0;
  }
  throw ValidationError("instances with --s needs --enumerate, --seed or --images");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sieve dynamics of prime constellations: gap cycles, population models, census"};
  app.config_formatter(std::make_shared<CLI::ConfigINI>());
  app.set_config("--config", "", "Flat key=value file; subcommand keys as cycle.p = 13")->check(CLI::ExistingFile);
  app.set_version_flag("--version", SIEVEDYN_VERSION);
  app.require_subcommand(1);

  SieveOptions sieve;
  std::string manifest;
  app.add_option("--jobs", sieve.jobs, "Worker threads for sieving")->capture_default_str()->check(CLI::Range(1u, 256u));
  app.add_option("--bound", sieve.bound, "Sieve upper bound")->capture_default_str();
  app.add_option("--segment-bits", sieve.segment_bits, "Odd numbers per sieve segment")->capture_default_str();
  app.add_option("--manifest", manifest, "Run manifest path (default: <out>.manifest.json)");

  CycleArgs cy;
  auto* cycle = app.add_subcommand("cycle", "Build, stream, export or verify G(p#)");
  cycle->add_option("--p", cy.p, "Target stage prime")->required();
  cycle->add_option("--p0", cy.p0, "Bootstrap prime (3..13; default min(13, p))");
  cycle->add_flag("--stream", cy.stream, "Generate lazily instead of materializing");
  cycle->add_flag("--verify", cy.verify, "Check length, span, first/last gap and symmetry");
  cycle->add_flag("--count-only", cy.count_only, "Print only the number of gaps");
  cycle->add_option("--format", cy.format, "csv (one gap per line) or bin")->capture_default_str();
  cycle->add_option("--out", cy.out, "Output file (default stdout)");
  cycle->add_option("--budget", cy.budget, "Materialization budget in bytes")->capture_default_str();

  ModelArgs mo;
  auto* model = app.add_subcommand("model", "Exact population model: curve CSV and asymptotics JSON");
  model->add_option("--s", mo.s, "Constellation, e.g. 6,6,6")->required();
  model->add_option("--p0", mo.p0, "Start stage; needs |s| < 2*p1")->required();
  model->add_option("--pk", mo.pk, "Last stage of the curve (default p0)");
  model->add_option("--stride", mo.stride, "Write every n-th stage")->capture_default_str()->check(CLI::PositiveNumber);
  model->add_option("--out", mo.out, "Curve CSV of w_j and lambda from p0 to pk");
  model->add_option("--json", mo.json_out, "Asymptotics JSON (default stdout)");
  model->add_flag("--exact-check", mo.exact_check, "Compare the integer model with scans up to pk <= 23");
  model->add_option("--truncation", mo.truncation, "Prime bound for C_{J+1}")->capture_default_str();

  CensusArgs ce;
  auto* census_cmd = app.add_subcommand("census", "Constellation counts among primes per interval of survival");
  census_cmd->add_option("--stages", ce.stages, "Stage primes A <= p < B as A..B")->required();
  census_cmd->add_option("--constellations", ce.constellations, "File with one constellation per line")->required();
  census_cmd->add_option("--out", ce.out, "Output file (default stdout)");
  census_cmd->add_flag("--prime-count", ce.prime_count, "Report the number of primes in the window");
  census_cmd->add_flag("--compare", ce.compare, "Compare census ratios with model ratios (JSON)");
  census_cmd->add_option("--reference", ce.reference, "Index of the reference constellation")->capture_default_str();
  census_cmd->add_option("--lambda-p0", ce.lambda_p0, "Start stage used to report lambda")->capture_default_str();

  InstanceArgs in;
  auto* inst = app.add_subcommand("instances", "Primorial coordinates and CRT-built instances");
  inst->add_option("--decompose", in.decompose, "Integer to write in primorial coordinates");
  inst->add_option("--ladder", in.ladder, "A..B: digits on q# for primes A < q <= B");
  inst->add_option("--s", in.s, "Constellation");
  inst->add_flag("--enumerate", in.enumerate, "List all instances modulo pk#");
  inst->add_option("--p0", in.p0, "Seed stage");
  inst->add_option("--pk", in.pk, "Last ladder prime");
  inst->add_option("--seed", in.seed, "Instance in G(p0#) to extend");
  inst->add_option("--residues", in.residues, "Residue choices p:r,... for the primes after p0");
  inst->add_option("--images", in.images, "Instance in G(pk#) whose replication images to classify");
  inst->add_option("--out", in.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  Run run;
  run.manifest_path = manifest;
  run.argv.assign(argv, argv + argc);
  try {
    int status = 0;
    if (*cycle) {
      run.command = "cycle";
      run.out = cy.out;
      status = run_cycle(cy, run);
    } else if (*model) {
      run.command = "model";
      run.out = mo.out;
      status = run_model(mo, run);
    } else if (*census_cmd) {
      run.command = "census";
      run.out = ce.out;
      status = run_census(ce, sieve, run);
    } else if (*inst) {
      run.command = "instances";
      run.out = in.out;
      status = run_instances(in, run);
    }
    run.write_manifest();
    return status;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const BoundError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return 2;
  }
}

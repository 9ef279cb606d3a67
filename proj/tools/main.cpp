// framecomplex command-line front end.
//
// Exit codes: 0 all verdicts pass, 1 a verdict failed, 2 inconclusive
// (budget or unmet hypotheses of the instance), 3 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "framecomplex/frames.hpp"
#include "framecomplex/homology.hpp"
#include "framecomplex/ring.hpp"
#include "framecomplex/symplectic.hpp"
#include "framecomplex/theorems.hpp"

namespace fc = framecomplex;

namespace {

constexpr int kUsage = 3;

struct Options {
  std::int64_t ring = 2;
  std::string family = "IU";
  int n = 2;
  int k = 1;
  int m = 0;  // 0: theorem default
  int max_degree = 2;
  std::uint64_t element_budget = fc::Budget{}.element_limit;
  std::uint64_t snf_budget = fc::Budget{}.snf_limit;
  std::vector<std::int64_t> primes{2, 3, 5, 7, 1'000'003};
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string out;
  std::string format = "json";
  bool timings = false;
  std::string theorem;
  std::string frame;
};

fc::TheoremConfig to_config(const Options& o) {
  fc::TheoremConfig c;
  c.ring = o.ring;
  c.n = o.n;
  c.k = o.k;
  if (o.m > 0) c.m = o.m;
  c.max_degree = o.max_degree;
  c.seed = o.seed;
  c.timings = o.timings;
  c.workers = o.workers;
  c.budget.element_limit = o.element_budget;
  c.budget.snf_limit = o.snf_budget;
  c.screen_primes = o.primes;
  return c;
}

fc::FrameFamily parse_family(const std::string& s) {
  if (s == "U") return fc::FrameFamily::kU;
  if (s == "IU") return fc::FrameFamily::kIU;
  if (s == "HU") return fc::FrameFamily::kHU;
  if (s == "MU") return fc::FrameFamily::kMU;
  if (s == "Uprime") return fc::FrameFamily::kUprime;
  throw fc::InvalidInput("unknown family: " + s);
}

nlohmann::json envelope(const std::string& command, const Options& o, nlohmann::json result) {
  nlohmann::json j;
  j["tool"] = "framecomplex";
  j["version"] = std::string(fc::library_version());
  j["command"] = command;
  auto cfg = to_config(o).to_json();
  cfg["family"] = o.family;
  j["config"] = cfg;
  j["result"] = std::move(result);
  return j;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw fc::InvalidInput("cannot open " + o.out);
  f << text;
}

void emit_json(const Options& o, const nlohmann::json& j) { emit(o, j.dump(2) + "\n"); }

std::vector<fc::Vector> parse_frame(const std::string& text) {
  std::vector<fc::Vector> out;
  std::stringstream rows(text);
  std::string row;
  while (std::getline(rows, row, ';')) {
    std::stringstream entries(row);
    fc::Vector v;
    std::string e;
    while (std::getline(entries, e, ',')) v.push_back(std::stoll(e));
    if (!v.empty()) out.push_back(std::move(v));
  }
  return out;
}

std::vector<fc::Vector> random_frame(const fc::SymplecticSpace& space, int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> digit(0, space.ring().modulus() - 1);
  for (int attempt = 0; attempt < 100'000; ++attempt) {
    std::vector<fc::Vector> v(static_cast<std::size_t>(k), fc::Vector(space.dimension()));
    for (auto& x : v)
      for (auto& e : x) e = digit(rng);
    if (fc::is_frame(space, v, fc::FrameMode::kUnimodular)) return v;
  }
  throw fc::BudgetExceeded("no unimodular frame sampled");
}

int cmd_enumerate(const Options& o) {
  const fc::SymplecticSpace space(fc::ModulusRing(o.ring), static_cast<std::size_t>(o.n));
  fc::FrameQuery q;
  q.family = parse_family(o.family);
  const auto p = fc::enumerate_poset(space, q, to_config(o).budget.restarted_from_environment());
  if (o.format == "tsv") {
    std::ostringstream os;
    os << "length\tcount\n";
    for (std::size_t len = 1; len <= p.max_length(); ++len) os << len << '\t' << p.count_of_length(len) << '\n';
    emit(o, os.str());
    return 0;
  }
  nlohmann::json r;
  r["size"] = p.size();
  auto by = nlohmann::json::object();
  for (std::size_t len = 1; len <= p.max_length(); ++len) by[std::to_string(len)] = p.count_of_length(len);
  r["by_length"] = by;
  r["chain_condition"] = p.check_chain_condition();
  emit_json(o, envelope("enumerate", o, r));
  return 0;
}

int cmd_homology(const Options& o) {
  const fc::SymplecticSpace space(fc::ModulusRing(o.ring), static_cast<std::size_t>(o.n));
  const auto budget = to_config(o).budget.restarted_from_environment();
  fc::FrameQuery q;
  q.family = parse_family(o.family);
  q.max_length = static_cast<std::size_t>(o.max_degree + 2);
  const auto p = fc::enumerate_poset(space, q, budget);
  fc::HomologyOptions opts;
  opts.screen_primes = o.primes;
  opts.allow_screen = !o.primes.empty();
  const auto h = fc::integer_homology(p, o.max_degree, true, budget, opts);
  if (o.format == "tsv") {
    std::ostringstream os;
    os << "degree\treduced_homology\tmethod\n";
    for (const auto& [k, g] : h.groups) os << k << '\t' << g.to_string() << '\t' << h.method << '\n';
    emit(o, os.str());
  } else {
    auto r = h.to_json();
    r["size"] = p.size();
    emit_json(o, envelope("homology", o, r));
  }
  return 0;
}

int cmd_stable_rank(const Options& o) {
  const auto r = fc::stable_rank(fc::ModulusRing(o.ring), to_config(o).budget.restarted_from_environment());
  if (o.format == "tsv") {
    std::ostringstream os;
    os << "ring\tcondition\tholds\n";
    for (const auto& s : r.reports)
      os << s.ring << '\t' << s.condition << '\t' << (s.holds ? (*s.holds ? "true" : "false") : "unknown") << '\n';
    emit(o, os.str());
  } else {
    nlohmann::json j;
    j["stable_rank"] = r.value ? nlohmann::json(*r.value) : nlohmann::json(nullptr);
    auto reps = nlohmann::json::array();
    for (const auto& s : r.reports) reps.push_back(s.to_json());
    j["reports"] = reps;
    emit_json(o, envelope("stable-rank", o, j));
  }
  return r.value ? 0 : 2;
}

int cmd_orbit(const Options& o) {
  const fc::SymplecticSpace space(fc::ModulusRing(o.ring), static_cast<std::size_t>(o.n));
  const auto family = parse_family(o.family);
  if (family != fc::FrameFamily::kIU && family != fc::FrameFamily::kHU)
    throw fc::InvalidInput("orbit: family must be IU or HU");
  if (o.k < 1 || o.k > o.n) throw fc::InvalidInput("orbit: need 1 <= k <= n");
  fc::Sequence seed;
  for (int i = 0; i < o.k; ++i) {
    const auto j = 2 * static_cast<std::size_t>(i) + 1;
    seed.push_back(family == fc::FrameFamily::kIU
                       ? fc::encode_vector(space.ring(), space.basis_vector(j))
                       : fc::encode_pair(space.ring(), space.basis_vector(j), space.basis_vector(j + 1)));
  }
  const auto r = fc::esp_orbit(space, family, seed, true, to_config(o).budget.restarted_from_environment());
  if (o.format == "tsv") {
    std::ostringstream os;
    os << "family\tring\tn\tk\torbit_size\tlevel_size\ttransitive\n";
    os << o.family << '\t' << space.ring().name() << '\t' << o.n << '\t' << o.k << '\t' << r.orbit_size << '\t'
       << (r.level_size ? std::to_string(*r.level_size) : "NA") << '\t'
       << (r.transitive ? (*r.transitive ? "true" : "false") : "null") << '\n';
    emit(o, os.str());
  } else {
    emit_json(o, envelope("orbit", o, r.to_json()));
  }
  if (!r.transitive) return 2;
  return *r.transitive ? 0 : 1;
}

int cmd_complete_basis(const Options& o) {
  const fc::SymplecticSpace space(fc::ModulusRing(o.ring), static_cast<std::size_t>(o.n));
  const auto budget = to_config(o).budget.restarted_from_environment();
  const auto sr = fc::stable_rank(space.ring(), budget);
  if (!sr.value) return 2;
  const auto v = o.frame.empty() ? random_frame(space, o.k, o.seed) : parse_frame(o.frame);
  const auto r = fc::complete_to_hyperbolic(space, v, *sr.value, o.seed, budget);
  nlohmann::json j;
  j["frame"] = v;
  j["verdict"] = std::string(fc::to_string(r.verdict));
  j["notes"] = r.notes;
  if (r.basis) {
    j["x"] = r.basis->x;
    j["y"] = r.basis->y;
  }
  if (o.format == "tsv") {
    std::ostringstream os;
    os << "role\tindex\tvector\n";
    if (r.basis)
      for (std::size_t i = 0; i < r.basis->x.size(); ++i)
        for (const auto& [role, vec] : {std::pair{"x", r.basis->x[i]}, std::pair{"y", r.basis->y[i]}}) {
          os << role << '\t' << i + 1 << '\t';
          for (std::size_t c = 0; c < vec.size(); ++c) os << (c ? "," : "") << vec[c];
          os << '\n';
        }
    emit(o, os.str());
  } else {
    emit_json(o, envelope("complete-basis", o, j));
  }
  return fc::exit_code(r.verdict);
}

int cmd_verify(const Options& o) {
  const auto r = fc::verify_theorem(o.theorem, to_config(o));
  if (o.format == "tsv") emit(o, r.to_tsv());
  else emit_json(o, r.to_json());
  return fc::exit_code(r.verdict);
}

int cmd_report(const Options& o) {
  fc::VerificationReport all;
  all.theorem = "bounds";
  all.config = to_config(o).to_json();
  all.verdict = fc::Verdict::kPass;
  for (const std::string t : {"b-w1", "b-w2", "kal5", "u-i"}) {
    // the frame families get a whole-poset row as well as the --k row
    std::vector<int> ks{o.k};
    if ((t == "b-w1" || t == "b-w2") && o.k != 0) ks.insert(ks.begin(), 0);
    for (int k : ks)
      for (int n = 1; n <= o.n; ++n) {
        auto c = to_config(o);
        c.n = n;
        c.k = k;
        const auto row = fc::verify_bw(t, c);
        if (row.verdict == fc::Verdict::kHypothesisViolation) continue;
        all.verdict = fc::combine(all.verdict, row.verdict);
        all.rows.push_back(row);
      }
  }
  if (o.format == "tsv") emit(o, all.to_tsv());
  else emit_json(o, all.to_json());
  return fc::exit_code(all.verdict);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frame posets over Z/m: enumeration, homology and verification of connectivity results"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--ring", o.ring, "Modulus m of the ring Z/m")->check(CLI::Range(2, 1'000'000));
  app.add_option("--family", o.family, "Frame family")->check(CLI::IsMember({"U", "IU", "HU", "MU", "Uprime"}));
  app.add_option("--n", o.n, "Rank n (the module is R^2n)")->check(CLI::Range(1, 64));
  app.add_option("--k", o.k, "Frame length")->check(CLI::Range(0, 64));
  app.add_option("--m", o.m, "Ambient rank for kal5; rank of U for maazen1 and char")->check(CLI::Range(0, 64));
  app.add_option("--max-degree", o.max_degree, "Highest homological degree computed")->check(CLI::Range(0, 32));
  app.add_option("--element-budget", o.element_budget, "Maximum number of enumerated objects");
  app.add_option("--snf-budget", o.snf_budget, "Maximum fill-in during Smith elimination");
  app.add_option("--primes", o.primes, "Screen primes used past the SNF budget")->delimiter(',');
  app.add_option("--seed", o.seed, "Seed for every random choice");
  app.add_option("--workers", o.workers, "Worker threads")->check(CLI::Range(1, 256));
  app.add_option("--out", o.out, "Write the report here instead of stdout");
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "tsv"}));
  app.add_flag("--timings", o.timings, "Include wall-clock runtimes (reports are then not reproducible)");

  auto* enumerate = app.add_subcommand("enumerate", "Enumerate a frame poset");
  auto* homology = app.add_subcommand("homology", "Reduced integer homology of a frame poset");
  auto* stable = app.add_subcommand("stable-rank", "Certify the stable rank of Z/m");
  auto* orbit = app.add_subcommand("orbit", "ESp orbit of the standard k-frame");
  auto* complete = app.add_subcommand("complete-basis", "Complete a unimodular frame to a hyperbolic basis");
  complete->add_option("--frame", o.frame, "Vectors as a,b,c;d,e,f (default: random from --seed)");
  auto* verify = app.add_subcommand("verify", "Verify one theorem at desk scale");
  verify->add_option("--theorem", o.theorem, "Theorem")->required()->check(CLI::IsMember(fc::theorem_names()));
  auto* report = app.add_subcommand("report", "Connectivity table for n = 1 .. --n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*enumerate) return cmd_enumerate(o);
    if (*homology) return cmd_homology(o);
    if (*stable) return cmd_stable_rank(o);
    if (*orbit) return cmd_orbit(o);
    if (*complete) return cmd_complete_basis(o);
    if (*verify) return cmd_verify(o);
    if (*report) return cmd_report(o);
  } catch (const fc::InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const fc::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return 2;
  }
  return kUsage;
}

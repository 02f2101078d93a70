// Prints one PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.

#include "divsel/divsel.hpp"
#include "oracles.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <unordered_map>

using namespace divsel;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

int failures = 0;

void report(int number, const std::string& title, const Outcome& o, double seconds) {
  std::ostringstream t;
  t.precision(2);
  t << std::fixed << seconds;
  std::cout << (o.pass ? "PASS" : "FAIL") << "  " << number << ". " << title << " (" << t.str() << " s)";
  if (!o.detail.empty()) std::cout << ": " << o.detail;
  std::cout << "\n";
  if (!o.pass) ++failures;
}

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::filesystem::path> fixture_files() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(DIVSEL_FIXTURES))
    if (e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

// 1 and 2 share the universe: every class on a 4-place set with
// denominators in {1, 2, 3, 6}.
std::vector<std::vector<BrauerClass>> brauer_universes() {
  std::vector<std::vector<BrauerClass>> out;
  for (PlaceTemplate t : {PlaceTemplate{0, 0, 4}, PlaceTemplate{1, 0, 3}})
    out.push_back(enumerate_classes(EnumerationSpec{t, 6, {1, 2, 3, 6}}));
  return out;
}

Outcome brauer_laws(const std::vector<std::vector<BrauerClass>>& universes) {
  Outcome o;
  std::size_t total = 0;
  for (const auto& U : universes) {
    const std::size_t n = U.size();
    total += n;
    std::unordered_map<std::string, std::size_t> id;
    for (std::size_t i = 0; i < n; ++i) id.emplace(to_string(U[i]), i);
    if (id.size() != n) o.fail("duplicate classes in the universe");

    const BrauerClass identity(U.front().places());
    std::vector<std::size_t> table(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      if (tensor(U[a], identity) != U[a]) o.fail("identity fails at " + to_string(U[a]));
      if (!tensor(U[a], opposite(U[a])).is_trivial()) o.fail("inverse fails at " + to_string(U[a]));
      for (std::size_t b = 0; b < n; ++b) {
        BrauerClass ab = tensor(U[a], U[b]);
        if (oracle::raw(ab) != oracle::pointwise_add(oracle::raw(U[a]), oracle::raw(U[b])))
          o.fail("tensor is not pointwise addition");
        if (!validate_class(ab.to_raw(), ab.places()).ok()) o.fail("sum-zero closure fails");
        auto it = id.find(to_string(ab));
        if (it == id.end()) {
          o.fail("universe not closed under tensor");
          return o;
        }
        table[a * n + b] = it->second;
      }
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (table[a * n + b] != table[b * n + a]) o.fail("commutativity fails");
        for (std::size_t c = 0; c < n; ++c)
          if (table[table[a * n + b] * n + c] != table[a * n + table[b * n + c]]) o.fail("associativity fails");
      }
    // Minimal annihilating power via the Cayley table.
    for (std::size_t a = 0; a < n; ++a) {
      std::size_t acc = a, k = 1;
      while (!U[acc].is_trivial()) {
        acc = table[acc * n + a];
        ++k;
      }
      if (class_order(U[a]) != k) o.fail("class_order ≠ minimal annihilating power at " + to_string(U[a]));
    }
  }
  o.detail = o.pass ? std::to_string(total) + " classes" : o.detail;
  return o;
}

Outcome index_law(const std::vector<std::vector<BrauerClass>>& universes) {
  Outcome o;
  std::size_t total = 0;
  for (const auto& U : universes)
    for (const auto& c : U) {
      Integer l = 1;
      for (const auto& [_, q] : oracle::raw(c)) l = lcm(l, boost::multiprecision::denominator(q));
      if (class_order(c) != l) o.fail("order ≠ lcm of local indices at " + to_string(c));
      ++total;
    }
  if (o.pass) o.detail = std::to_string(total) + " classes";
  return o;
}

bool twice_odd(const Integer& n) { return n % 2 == 0 && (n / 2) % 2 == 1; }

bool finite_indices_odd(const AlgebraDescriptor& B) {
  for (const auto& [i, q] : B.brauer_class().support())
    if (B.placeset()[i].is_finite() && q.denominator() % 2 == 0) return false;
  return true;
}

Outcome decomposition_soundness() {
  Outcome o;
  std::size_t checked = 0;
  for (const EnumerationSpec& spec : {EnumerationSpec{{2, 1, 3}, 6, {1, 2, 3, 6}},
                                      EnumerationSpec{{4, 0, 3}, 10, {1, 2, 5, 10}}}) {
    for (const auto& c : enumerate_classes(spec)) {
      Integer n = class_order(c);
      AlgebraDescriptor B(c, n);
      if (!twice_odd(n) || !finite_indices_odd(B)) continue;
      ++checked;
      std::optional<Decomposition> decomposed;
      try {
        decomposed = decompose(B);
      } catch (const std::exception& e) {
        o.fail(std::string("decompose threw: ") + e.what());
        continue;
      }
      const Decomposition& d = *decomposed;
      auto r1 = oracle::raw(d.quaternion_part.brauer_class());
      auto r2 = oracle::raw(d.odd_part.brauer_class());
      if (oracle::pointwise_add(r1, r2) != oracle::raw(c)) o.fail("B1 ⊗ B2 ≠ B at " + to_string(c));
      std::set<std::string> T(d.T.begin(), d.T.end());
      std::set<std::string> support;
      for (const auto& [id, q] : r1) {
        support.insert(id);
        if (q != Rational(1, 2)) o.fail("B1 invariant is not 1/2 at " + id);
      }
      if (support != T) o.fail("B1 is not supported exactly on T for " + to_string(c));
      for (const auto& id : T)
        if (!B.placeset().at(id).is_real() || c.invariant_at(id).is_zero()) o.fail("T is not the real ramification");
      if (T.size() % 2 != 0) o.fail("|T| odd for " + to_string(c));
      if (class_order(d.odd_part.brauer_class()) != n / 2) o.fail("class_order(B2) ≠ n/2 for " + to_string(c));
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " descriptors";
  return o;
}

Outcome abhn_equivalence() {
  Outcome o;
  std::size_t pairs = 0;
  for (PlaceTemplate t : {PlaceTemplate{1, 1, 2}, PlaceTemplate{1, 0, 3}}) {
    auto P = make_placeset(t);
    for (unsigned n = 1; n <= 6; ++n) {
      auto fields = enumerate_field_data(*P, n);
      for (const auto& c : enumerate_classes(EnumerationSpec{t, n, {1, 2, 3, 6}}, P)) {
        AlgebraDescriptor B(c, n);
        auto invariants = oracle::raw(c);
        for (const auto& L : fields) {
          ++pairs;
          bool fast = static_cast<bool>(embeds_as_maximal_subfield(L, B));
          bool slow = !oracle::divisibility_scan(L, invariants).has_value();
          if (fast != slow) o.fail("disagreement at " + to_string(c) + " degree " + std::to_string(n));
        }
      }
    }
  }
  if (o.pass) o.detail = std::to_string(pairs) + " (L, B) pairs";
  return o;
}

Outcome necessity_sweep() {
  Outcome o;
  PlaceTemplate places{2, 1, 3};
  auto P = make_placeset(places);
  auto profiles = enumerate_quadratic_profiles(*P);
  std::size_t instances = 0, selective = 0;
  for (const auto& c : enumerate_classes(EnumerationSpec{places, 60, {1, 2, 3, 4, 5, 6}}, P)) {
    Integer n = class_order(c);
    if (n < 2 || n > 6) continue;
    AlgebraDescriptor B(c, n);
    for (const auto& L : sweep_field_data(B)) {
      ++instances;
      auto v = decide_selectivity(B, L, profiles);
      if (v.status != VerdictStatus::selective) continue;
      ++selective;
      if (n % 2 == 1) o.fail("Selective at odd degree: " + to_string(c));
      if (n % 4 == 0) o.fail("Selective with 4 | n: " + to_string(c));
      if (!finite_indices_odd(B)) o.fail("Selective with even finite index: " + to_string(c));
    }
  }
  SweepConfig config;
  config.places = places;
  config.min_degree = 2;
  config.max_degree = 6;
  auto r = theorem_consistency_sweep(config);
  if (!r.ok()) o.fail("sweep counterexample: " + r.counterexamples.front());
  if (!r.complete) o.fail("sweep hit its budget");
  for (const auto& [degree, count] : r.selective_by_degree)
    if (!twice_odd(Integer(degree))) o.fail("sweep found Selective at degree " + degree);
  if (selective == 0) o.fail("no Selective instance at all; the sweep is vacuous");
  if (o.pass)
    o.detail = std::to_string(instances) + " instances, " + std::to_string(selective) + " selective, sweep " +
               std::to_string(r.instances) + " instances";
  return o;
}

Outcome sufficiency_fixture() {
  Outcome o;
  auto parsed = parse_problem_file(read_file(std::filesystem::path(DIVSEL_FIXTURES) / "fixture.json"));
  if (!parsed.problem) {
    o.fail("fixture did not parse");
    return o;
  }
  const auto& pf = *parsed.problem;
  const auto& B = pf.algebras.at("B6");
  const auto& L = pf.fields.at("L6");
  const auto& E = pf.quadratics.at("E1");
  auto v = decide_selectivity(B, L, {E});
  if (v.status != VerdictStatus::selective) o.fail("verdict is " + std::string(to_string(v.status)));
  if (!v.rate || *v.rate != Rational(1, 2)) o.fail("rate is not exactly 1/2");
  for (const auto& f : audit_selective(B, L, *v.chosen_E)) o.fail("auditor: " + f);
  if (o.pass) o.detail = "Selective, rate " + to_string(*v.rate) + ", auditor clean";
  return o;
}

Outcome constraint_table() {
  Outcome o;
  auto parsed = parse_problem_file(read_file(std::filesystem::path(DIVSEL_FIXTURES) / "fixture.json"));
  const auto& pf = *parsed.problem;
  const auto& B = pf.algebras.at("B6");
  const auto& L = pf.fields.at("L6");
  auto table = derive_quadratic_constraints(B, L);
  std::size_t accepted = 0, satisfying = 0, profiles = 0;
  for (const auto& E : enumerate_quadratic_profiles(B.placeset())) {
    ++profiles;
    bool a = check_candidate_E(E, B, L).accepted;
    bool s = table.satisfied_by(E);
    accepted += a;
    satisfying += s;
    if (a && !s) o.fail("accepted profile violates the table");
    if (s && !a) o.fail("table-satisfying profile is rejected");
  }
  if (accepted == 0) o.fail("no profile accepted");
  if (o.pass)
    o.detail = std::to_string(profiles) + " profiles, " + std::to_string(accepted) + " accepted = " +
               std::to_string(satisfying) + " satisfying";
  return o;
}

std::vector<std::string> all_reports(const std::filesystem::path& file) {
  std::vector<std::string> out;
  auto parsed = parse_problem_file(read_file(file));
  if (!parsed.problem) return out;
  const ProblemFile& pf = *parsed.problem;
  std::vector<CommandOptions> options;
  CommandOptions base;
  options.push_back(base);
  for (const auto& [a, B] : pf.algebras)
    for (const auto& [f, L] : pf.fields) {
      CommandOptions o;
      o.algebra = a;
      o.field = f;
      options.push_back(o);
      for (const auto& [e, _] : pf.quadratics) o.candidates.push_back(e);
      options.push_back(o);
    }
  for (const char* cmd : {"validate", "analyze", "decompose", "embed", "selectivity"})
    for (auto o : options)
      for (bool json : {false, true}) {
        o.json = json;
        auto r = run_command(cmd, o, &pf);
        out.push_back(std::to_string(r.exit_code) + "\n" + r.out + r.err);
      }
  return out;
}

Outcome round_trip_and_determinism() {
  Outcome o;
  std::size_t files = 0, reports = 0;
  for (const auto& file : fixture_files()) {
    ++files;
    auto first = parse_problem_file(read_file(file));
    if (!first.problem) {
      o.fail(file.filename().string() + " did not parse");
      continue;
    }
    std::string s1 = serialize_problem_file(*first.problem);
    auto second = parse_problem_file(s1);
    if (!second.problem || !(*second.problem == *first.problem) || serialize_problem_file(*second.problem) != s1)
      o.fail(file.filename().string() + " is not a parse/serialize fixpoint");
    auto a = all_reports(file);
    auto b = all_reports(file);
    reports += a.size();
    if (a != b) o.fail(file.filename().string() + " reports differ between runs");
  }
  CommandOptions e;
  e.max_degree = 6;
  e.workers = 4;
  if (run_command("enumerate", e, nullptr).out != run_command("enumerate", e, nullptr).out)
    o.fail("enumerate report differs between runs");
  if (files == 0) o.fail("no fixtures found");
  if (o.pass) o.detail = std::to_string(files) + " fixtures, " + std::to_string(reports) + " reports";
  return o;
}

}  // namespace

int main() {
  auto timed = [](const std::function<Outcome()>& f, double& seconds) {
    auto t0 = Clock::now();
    Outcome o = f();
    seconds = since(t0);
    return o;
  };
  double t = 0;
  std::vector<std::vector<BrauerClass>> universes;

  Outcome laws = timed(
      [&] {
        universes = brauer_universes();
        return brauer_laws(universes);
      },
      t);
  if (t >= 5.0) laws.fail("runtime " + std::to_string(t) + " s ≥ 5 s");
  report(1, "Brauer group laws", laws, t);

  Outcome index = timed([&] { return index_law(universes); }, t);
  report(2, "class order is the lcm of local indices", index, t);

  Outcome soundness = timed(decomposition_soundness, t);
  report(3, "decomposition soundness", soundness, t);

  Outcome abhn = timed(abhn_equivalence, t);
  report(4, "embedding test matches divisibility scan", abhn, t);

  Outcome necessity = timed(necessity_sweep, t);
  if (t >= 60.0) necessity.fail("runtime " + std::to_string(t) + " s ≥ 60 s");
  report(5, "necessity sweep", necessity, t);

  Outcome sufficiency = timed(sufficiency_fixture, t);
  report(6, "sufficiency fixture", sufficiency, t);

  Outcome table = timed(constraint_table, t);
  report(7, "constraint table matches candidate check", table, t);

  Outcome determinism = timed(round_trip_and_determinism, t);
  report(8, "round trip and deterministic reports", determinism, t);

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}

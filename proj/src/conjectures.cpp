#include "coxaut/conjectures.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "json.hpp"

namespace coxaut {

using nlohmann::json;

StatsRow stats_row(const CoxeterSystem& sys, const ClosureOptions& opts) {
  StatsRow row;
  row.group = sys.name();
  const SmallRootTable table = build_small_roots(sys, 0);
  const Automaton a0 = build_canonical_automaton(table);
  const ClosureResult stilde = smallest_shadow(sys, opts);
  row.a0 = a0.size();
  row.a_stilde = build_shadow_automaton(sys, stilde.shadow).size();
  row.a_min = minimize(a0).size();
  row.sigma = table.size();
  row.spherical_sigma = spherical_analysis(table).spherical.size();
  row.cap_stable = stilde.cap_stable;
  return row;
}

std::string stats_csv_header() { return "group,A0,AStilde,Amin,Sigma,SphSigma,cap_stable"; }

std::string to_csv(const StatsRow& r) {
  return r.group + "," + std::to_string(r.a0) + "," + std::to_string(r.a_stilde) + "," + std::to_string(r.a_min) +
         "," + std::to_string(r.sigma) + "," + std::to_string(r.spherical_sigma) + "," +
         (r.cap_stable ? "true" : "false");
}

std::string to_json_text(const std::vector<StatsRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"group", r.group},
                   {"A0", r.a0},
                   {"AStilde", r.a_stilde},
                   {"Amin", r.a_min},
                   {"Sigma", r.sigma},
                   {"SphSigma", r.spherical_sigma},
                   {"cap_stable", r.cap_stable}});
  }
  return out.dump(2);
}

Conjecture parse_conjecture(const std::string& text) {
  if (text == "1" || text == "conj1") return Conjecture::MinimalShadow;
  if (text == "2" || text == "conj2") return Conjecture::SphericalMinimal;
  if (text == "dyho1") return Conjecture::LowShadow;
  if (text == "dyho2") return Conjecture::LowInjective;
  throw Error(ErrorKind::ParseError, "unknown conjecture '" + text + "'");
}

std::string conjecture_id(Conjecture c, int n) {
  switch (c) {
    case Conjecture::MinimalShadow:
      return "conj1";
    case Conjecture::SphericalMinimal:
      return "conj2";
    case Conjecture::LowShadow:
      return "dyho1(" + std::to_string(n) + ")";
    case Conjecture::LowInjective:
      return "dyho2(" + std::to_string(n) + ")";
  }
  return "?";
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Holds:
      return "Holds";
    case Outcome::Fails:
      return "Fails";
    case Outcome::Indeterminate:
      return "Indeterminate";
  }
  return "?";
}

std::optional<std::pair<Word, Word>> merged_state_witness(const CoxeterSystem& sys, const Automaton& A) {
  const Minimized m = minimize_with_classes(A);
  if (m.automaton.size() == A.size()) return std::nullopt;
  if (sys.rank() == 3) {
    std::array<int, 3> p{0, 1, 2};
    do {
      const auto [s, t, u] = p;
      if (sys.matrix()(s, u) != 2) continue;
      if (!is_reduced_word(sys, {t, s, u})) continue;
      const int a = A.run({s, u});
      const int b = A.run({t, s, u});
      if (a >= 0 && b >= 0 && a != b && m.class_of[a] == m.class_of[b]) return std::pair{Word{s, u}, Word{t, s, u}};
    } while (std::next_permutation(p.begin(), p.end()));
  }
  std::vector<int> first(m.automaton.size(), -1);
  for (std::size_t q = 0; q < A.size(); ++q) {
    const int c = m.class_of[q];
    if (first[c] < 0) {
      first[c] = static_cast<int>(q);
    } else {
      Word a = state_word(A, first[c]);
      Word b = state_word(A, static_cast<int>(q));
      std::reverse(a.begin(), a.end());
      std::reverse(b.begin(), b.end());
      return std::pair{a, b};
    }
  }
  return std::nullopt;
}

namespace {

void add_number(ConjectureReport& r, const std::string& name, std::size_t v) {
  r.numbers.push_back({name, std::to_string(v), false});
}
void add_flag(ConjectureReport& r, const std::string& name, bool v) {
  r.numbers.push_back({name, v ? "true" : "false", true});
}

}  // namespace

ConjectureReport check_conjecture(const CoxeterSystem& sys, Conjecture which, int n, const ClosureOptions& opts) {
  ConjectureReport r;
  r.id = conjecture_id(which, n);
  r.group = sys.name();
  r.cap = opts.cap;
  r.budget = opts.budget;
  r.level = n;
  switch (which) {
    case Conjecture::MinimalShadow: {
      const ClosureResult c = smallest_shadow(sys, opts);
      r.cap = c.cap_used;
      const Automaton a = build_shadow_automaton(sys, c.shadow);
      const Automaton m = minimize(a);
      add_number(r, "AStilde", a.size());
      add_number(r, "Amin", m.size());
      add_flag(r, "cap_stable", c.cap_stable);
      if (!c.cap_stable) {
        r.outcome = Outcome::Indeterminate;
        r.reason = "smallest shadow not stable under a larger join cap";
      } else if (isomorphic(a, m)) {
        r.outcome = Outcome::Holds;
        r.reason = "A_S~ is isomorphic to its minimisation";
      } else {
        r.outcome = Outcome::Fails;
        r.reason = "A_S~ has equivalent states";
        if (auto w = merged_state_witness(sys, a)) r.witness = {w->first, w->second};
      }
      break;
    }
    case Conjecture::SphericalMinimal: {
      const SmallRootTable table = build_small_roots(sys, 0);
      const Automaton a = build_canonical_automaton(table);
      const std::size_t min_size = minimize(a).size();
      const bool minimal = min_size == a.size();
      const SphericalAnalysis sph = spherical_analysis(table);
      add_number(r, "A0", a.size());
      add_number(r, "Amin", min_size);
      add_number(r, "Sigma", table.size());
      add_number(r, "SphSigma", sph.spherical.size());
      add_flag(r, "minimal", minimal);
      add_flag(r, "sigma_eq_sph", sph.sigma_equals_spherical);
      if (!minimal) {
        if (auto w = merged_state_witness(sys, a)) r.witness = {w->first, w->second};
      }
      if (minimal == sph.sigma_equals_spherical) {
        r.outcome = Outcome::Holds;
        r.reason = minimal ? "A0 minimal and Sigma = spherical roots" : "A0 not minimal and Sigma has a non-spherical root";
      } else {
        r.outcome = Outcome::Fails;
        r.reason = minimal ? "A0 minimal although Sigma has a non-spherical root"
                           : "A0 not minimal although every small root is spherical";
      }
      break;
    }
    case Conjecture::LowShadow: {
      const SmallRootTable table = build_small_roots(sys, n);
      const Shadow low = low_elements(table);
      const ShadowVerdict v = verify_shadow(sys, low, opts.cap);
      r.cap = v.cap;
      add_number(r, "Ln", low.size());
      r.reason = v.reason;
      for (const auto& w : v.witness) r.witness.push_back(w.word());
      r.outcome = v.verdict == Verdict::Shadow      ? Outcome::Holds
                  : v.verdict == Verdict::NotShadow ? Outcome::Fails
                                                    : Outcome::Indeterminate;
      if (r.outcome == Outcome::Holds) r.reason = "L_n is a Garside shadow";
      break;
    }
    case Conjecture::LowInjective: {
      const SmallRootTable table = build_small_roots(sys, n);
      const Shadow low = low_elements(table);
      const Automaton a = build_canonical_automaton(table);
      std::set<std::vector<int>> images;
      for (const auto& w : low.elements()) images.insert(small_inversion_set(table, w));
      add_number(r, "Ln", low.size());
      add_number(r, "Lambda_n", a.size());
      add_number(r, "distinct_images", images.size());
      const bool injective = images.size() == low.size();
      add_flag(r, "injective", injective);
      if (injective && images.size() == a.size()) {
        r.outcome = Outcome::Holds;
        r.reason = "w -> Sigma_n(w) is a bijection from L_n onto Lambda_n";
      } else {
        r.outcome = Outcome::Fails;
        r.reason = injective ? "image of L_n misses some small inversion sets" : "two low elements share Sigma_n";
      }
      break;
    }
  }
  return r;
}

std::string to_json_text(const ConjectureReport& r) {
  json numbers = json::object();
  for (const auto& f : r.numbers) {
    if (f.is_bool) {
      numbers[f.name] = f.value == "true";
    } else {
      numbers[f.name] = std::stoull(f.value);
    }
  }
  json witness = json::array();
  for (const auto& w : r.witness) witness.push_back(word_to_string(w));
  json out = {{"conjecture", r.id},     {"group", r.group},     {"verdict", to_string(r.outcome)},
              {"reason", r.reason},     {"columns", numbers},   {"witness", witness},
              {"cap", r.cap},           {"budget", r.budget},   {"n", r.level}};
  return out.dump(2);
}

}  // namespace coxaut

#pragma once

// Per-instance evidence for the minimality conjectures. Nothing here claims
// more than what was checked on the given group with the given caps.

#include <optional>
#include <string>
#include <vector>

#include "coxaut/automaton.hpp"

namespace coxaut {

struct StatsRow {
  std::string group;
  std::size_t a0 = 0;
  std::size_t a_stilde = 0;
  std::size_t a_min = 0;
  std::size_t sigma = 0;
  std::size_t spherical_sigma = 0;
  bool cap_stable = false;
};

StatsRow stats_row(const CoxeterSystem& sys, const ClosureOptions& opts = {});
std::string stats_csv_header();
std::string to_csv(const StatsRow& row);
std::string to_json_text(const std::vector<StatsRow>& rows);

enum class Conjecture { MinimalShadow, SphericalMinimal, LowShadow, LowInjective };
/// Parses "1", "2", "dyho1", "dyho2".
Conjecture parse_conjecture(const std::string& text);
std::string conjecture_id(Conjecture c, int n);

enum class Outcome { Holds, Fails, Indeterminate };
const char* to_string(Outcome o);

struct NumberField {
  std::string name;
  std::string value;  // already rendered: integer or true/false
  bool is_bool = false;
};

struct ConjectureReport {
  std::string id;
  std::string group;
  Outcome outcome = Outcome::Indeterminate;
  std::string reason;
  std::vector<NumberField> numbers;
  std::vector<Word> witness;
  int cap = 0;
  std::size_t budget = 0;
  int level = 0;
};

ConjectureReport check_conjecture(const CoxeterSystem& sys, Conjecture which, int n = 0,
                                  const ClosureOptions& opts = {});
std::string to_json_text(const ConjectureReport& report);

/// Two states of A merged by minimisation, as words leading to them from the
/// initial state. In rank 3 the pair reached by su and tsu (m_su = 2) is
/// tried first.
std::optional<std::pair<Word, Word>> merged_state_witness(const CoxeterSystem& sys, const Automaton& A);

}  // namespace coxaut

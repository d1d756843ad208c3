#pragma once

// Deterministic partial automata over the generating set. Every state is
// final; a word is accepted iff it can be read from the initial state.

#include <gmpxx.h>

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "coxaut/garside.hpp"
#include "coxaut/small_roots.hpp"

namespace coxaut {

/// State of a canonical automaton: a small inversion set, with a word w such
/// that the set is Sigma_n(w).
struct SmallSetPayload {
  std::vector<int> nodes;
  Word representative;
};

using Payload = std::variant<std::monostate, Element, SmallSetPayload>;

class Automaton {
 public:
  static constexpr int kUndefined = -1;

  explicit Automaton(int alphabet_size = 0) : alphabet_(alphabet_size) {}

  int alphabet_size() const { return alphabet_; }
  std::size_t size() const { return payloads_.size(); }
  int initial() const { return 0; }
  int add_state(Payload payload);
  void set_transition(int q, int s, int target) { delta_[static_cast<std::size_t>(q) * alphabet_ + s] = target; }
  int next(int q, int s) const { return delta_[static_cast<std::size_t>(q) * alphabet_ + s]; }
  const Payload& payload(int q) const { return payloads_[q]; }
  std::size_t transition_count() const;

  /// State reached by reading word, or kUndefined.
  int run(const Word& word) const;

 private:
  int alphabet_;
  std::vector<int> delta_;
  std::vector<Payload> payloads_;
};

/// A_B: states B, transitions x -> pi_B(sx) for s not in D_L(x). With a
/// restricted alphabet only letters of I are used, and all of B is kept.
Automaton build_shadow_automaton(const CoxeterSystem& sys, const Shadow& B);
Automaton build_shadow_automaton(const CoxeterSystem& sys, const Shadow& B, GeneratorSet I);

/// A_n: states are the n-small inversion sets reachable from the empty set.
Automaton build_canonical_automaton(const SmallRootTable& table);

struct Minimized {
  Automaton automaton;
  std::vector<int> class_of;  // old state -> new state
};
/// Moore partition refinement on the completion by a dead state; the dead
/// state is removed again, so sizes count live states only.
Minimized minimize_with_classes(const Automaton& A);
inline Automaton minimize(const Automaton& A) { return minimize_with_classes(A).automaton; }

enum class MorphismKind { NotMorphism, Morphism, TotallySurjective };
const char* to_string(MorphismKind k);

struct MorphismReport {
  MorphismKind kind = MorphismKind::NotMorphism;
  std::string witness;
};
MorphismReport check_morphism(const std::vector<int>& f, const Automaton& A, const Automaton& B);

bool isomorphic(const Automaton& A, const Automaton& B);

/// Number of accepted words of length k.
mpz_class count_accepted(const Automaton& A, int k);
/// Counts for lengths 0..k.
std::vector<mpz_class> count_by_length(const Automaton& A, int k);
bool accepts(const Automaton& A, const Word& word);

/// Keeps letters of I and the states reachable through them.
Automaton restrict_to_parabolic(const Automaton& A, GeneratorSet I);

/// Reading the reverse of a reduced word of w ends in the state for w.
int state_of_element(const Automaton& A, const Element& w);

/// Word of the element a canonical or shadow state stands for.
Word state_word(const Automaton& A, int q);

std::string payload_label(const Payload& p);
std::string to_dot(const Automaton& A, const std::string& name = "automaton");

}  // namespace coxaut

#include "coxaut/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

namespace coxaut {

int Automaton::add_state(Payload payload) {
  payloads_.push_back(std::move(payload));
  delta_.resize(payloads_.size() * alphabet_, kUndefined);
  return static_cast<int>(payloads_.size()) - 1;
}

std::size_t Automaton::transition_count() const {
  return static_cast<std::size_t>(std::count_if(delta_.begin(), delta_.end(), [](int t) { return t != kUndefined; }));
}

int Automaton::run(const Word& word) const {
  int q = initial();
  if (size() == 0) return kUndefined;
  for (int s : word) {
    if (s < 0 || s >= alphabet_) return kUndefined;
    q = next(q, s);
    if (q == kUndefined) return q;
  }
  return q;
}

bool accepts(const Automaton& A, const Word& word) { return A.run(word) != Automaton::kUndefined; }

Automaton build_shadow_automaton(const CoxeterSystem& sys, const Shadow& B) {
  return build_shadow_automaton(sys, B, sys.generators());
}

Automaton build_shadow_automaton(const CoxeterSystem& sys, const Shadow& B, GeneratorSet I) {
  Automaton A(sys.rank());
  if (B.index_of(Element{}) != 0) throw Error(ErrorKind::ShadowViolation, "shadow does not contain the identity");
  for (const auto& b : B.elements()) A.add_state(b);
  for (std::size_t q = 0; q < B.size(); ++q) {
    const Element& x = B.elements()[q];
    const GeneratorSet d = x.left_descents();
    for (int s : I.members()) {
      if (d.contains(s)) continue;
      const int target = B.index_of(project(B, mult_left(sys, s, x)));
      A.set_transition(static_cast<int>(q), s, target);
    }
  }
  return A;
}

namespace {

using Bits = std::vector<std::uint64_t>;

struct BitsHash {
  std::size_t operator()(const Bits& b) const {
    std::size_t h = 0x84222325cbf29ce4ULL;
    for (auto x : b) h = (h ^ x) * 0x100000001b3ULL;
    return h;
  }
};

bool test_bit(const Bits& b, int i) { return (b[i >> 6] >> (i & 63)) & 1U; }
void set_bit(Bits& b, int i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }

std::vector<int> bit_members(const Bits& b) {
  std::vector<int> out;
  for (std::size_t w = 0; w < b.size(); ++w) {
    for (std::uint64_t x = b[w]; x; x &= x - 1) out.push_back(static_cast<int>(w * 64 + std::countr_zero(x)));
  }
  return out;
}

}  // namespace

Automaton build_canonical_automaton(const SmallRootTable& table) {
  const int rank = table.system().rank();
  const std::size_t words = (table.size() + 63) / 64;
  Automaton A(rank);
  std::vector<Bits> states;
  std::vector<Word> reps;  // reading words
  std::unordered_map<Bits, int, BitsHash> index;
  auto intern = [&](Bits b, Word reading) {
    auto [it, fresh] = index.emplace(b, static_cast<int>(states.size()));
    if (fresh) {
      states.push_back(std::move(b));
      reps.push_back(std::move(reading));
    }
    return it->second;
  };
  intern(Bits(words, 0), {});
  std::vector<std::vector<int>> delta;
  for (std::size_t q = 0; q < states.size(); ++q) {
    delta.emplace_back(rank, Automaton::kUndefined);
    for (int s = 0; s < rank; ++s) {
      if (test_bit(states[q], s)) continue;  // alpha_s in A
      Bits image(words, 0);
      set_bit(image, s);
      for (int node : bit_members(states[q])) {
        const int t = table.node(node).theta[s];
        if (t >= 0) set_bit(image, t);
      }
      Word reading = reps[q];
      reading.push_back(s);
      delta[q][s] = intern(std::move(image), std::move(reading));
    }
  }
  for (std::size_t q = 0; q < states.size(); ++q) {
    Word rep(reps[q].rbegin(), reps[q].rend());
    A.add_state(SmallSetPayload{bit_members(states[q]), std::move(rep)});
  }
  for (std::size_t q = 0; q < states.size(); ++q) {
    for (int s = 0; s < rank; ++s) A.set_transition(static_cast<int>(q), s, delta[q][s]);
  }
  return A;
}

Minimized minimize_with_classes(const Automaton& A) {
  const int k = A.alphabet_size();
  const int n = static_cast<int>(A.size());
  const int sink = n;
  auto succ = [&](int q, int s) {
    if (q == sink) return sink;
    const int t = A.next(q, s);
    return t == Automaton::kUndefined ? sink : t;
  };
  std::vector<int> cls(n + 1, 0);
  cls[sink] = 1;
  int count = n > 0 ? 2 : 1;
  for (;;) {
    std::map<std::vector<int>, int> sig_to_class;
    std::vector<int> next_cls(n + 1);
    std::vector<int> sig(k + 1);
    for (int q = 0; q <= n; ++q) {
      sig[0] = cls[q];
      for (int s = 0; s < k; ++s) sig[s + 1] = cls[succ(q, s)];
      auto [it, fresh] = sig_to_class.emplace(sig, static_cast<int>(sig_to_class.size()));
      next_cls[q] = it->second;
    }
    const int next_count = static_cast<int>(sig_to_class.size());
    cls.swap(next_cls);
    if (next_count == count) break;
    count = next_count;
  }
  // Renumber the live classes in breadth-first order from the initial state.
  Minimized out;
  out.automaton = Automaton(k);
  out.class_of.assign(n, -1);
  if (n == 0) return out;
  std::unordered_map<int, int> new_id;
  std::vector<int> rep;
  std::deque<int> queue{A.initial()};
  new_id[cls[A.initial()]] = 0;
  rep.push_back(A.initial());
  while (!queue.empty()) {
    const int q = queue.front();
    queue.pop_front();
    for (int s = 0; s < k; ++s) {
      const int t = A.next(q, s);
      if (t == Automaton::kUndefined) continue;
      if (new_id.emplace(cls[t], static_cast<int>(rep.size())).second) {
        rep.push_back(t);
        queue.push_back(t);
      }
    }
  }
  for (int r : rep) out.automaton.add_state(A.payload(r));
  for (std::size_t c = 0; c < rep.size(); ++c) {
    for (int s = 0; s < k; ++s) {
      const int t = A.next(rep[c], s);
      if (t != Automaton::kUndefined) out.automaton.set_transition(static_cast<int>(c), s, new_id.at(cls[t]));
    }
  }
  for (int q = 0; q < n; ++q) {
    auto it = new_id.find(cls[q]);
    if (it != new_id.end()) out.class_of[q] = it->second;
  }
  return out;
}

const char* to_string(MorphismKind k) {
  switch (k) {
    case MorphismKind::NotMorphism:
      return "not-morphism";
    case MorphismKind::Morphism:
      return "morphism";
    case MorphismKind::TotallySurjective:
      return "totally-surjective";
  }
  return "?";
}

MorphismReport check_morphism(const std::vector<int>& f, const Automaton& A, const Automaton& B) {
  MorphismReport out;
  if (f.size() != A.size() || A.alphabet_size() != B.alphabet_size()) {
    out.witness = "map or alphabet size mismatch";
    return out;
  }
  if (A.size() == 0 || f[A.initial()] != B.initial()) {
    out.witness = "initial state not preserved";
    return out;
  }
  for (std::size_t q = 0; q < f.size(); ++q) {
    if (f[q] < 0 || f[q] >= static_cast<int>(B.size())) {
      out.witness = "state " + std::to_string(q) + " mapped outside the target";
      return out;
    }
  }
  // All states are final on both sides, so finality is preserved and reflected.
  const int k = A.alphabet_size();
  for (std::size_t q = 0; q < A.size(); ++q) {
    for (int s = 0; s < k; ++s) {
      const int t = A.next(static_cast<int>(q), s);
      if (t == Automaton::kUndefined) continue;
      if (B.next(f[q], s) != f[t]) {
        out.witness = "edge " + std::to_string(q) + " -" + std::to_string(s + 1) + "-> " + std::to_string(t) +
                      " not preserved";
        return out;
      }
    }
  }
  out.kind = MorphismKind::Morphism;
  std::vector<bool> hit(B.size(), false);
  for (int image : f) hit[image] = true;
  for (std::size_t p = 0; p < B.size(); ++p) {
    if (!hit[p]) {
      out.witness = "target state " + std::to_string(p) + " not in the image";
      return out;
    }
  }
  for (std::size_t q = 0; q < A.size(); ++q) {
    for (int s = 0; s < k; ++s) {
      if (B.next(f[q], s) != Automaton::kUndefined && A.next(static_cast<int>(q), s) == Automaton::kUndefined) {
        out.witness = "edge from target state " + std::to_string(f[q]) + " labelled " + std::to_string(s + 1) +
                      " does not lift to state " + std::to_string(q);
        return out;
      }
    }
  }
  out.kind = MorphismKind::TotallySurjective;
  return out;
}

bool isomorphic(const Automaton& A, const Automaton& B) {
  if (A.size() != B.size() || A.alphabet_size() != B.alphabet_size()) return false;
  if (A.size() == 0) return true;
  const int k = A.alphabet_size();
  std::vector<int> fwd(A.size(), -1), bwd(B.size(), -1);
  std::deque<int> queue{A.initial()};
  fwd[A.initial()] = B.initial();
  bwd[B.initial()] = A.initial();
  std::size_t matched = 1;
  while (!queue.empty()) {
    const int q = queue.front();
    queue.pop_front();
    for (int s = 0; s < k; ++s) {
      const int a = A.next(q, s);
      const int b = B.next(fwd[q], s);
      if ((a == Automaton::kUndefined) != (b == Automaton::kUndefined)) return false;
      if (a == Automaton::kUndefined) continue;
      if (fwd[a] == -1 && bwd[b] == -1) {
        fwd[a] = b;
        bwd[b] = a;
        ++matched;
        queue.push_back(a);
      } else if (fwd[a] != b || bwd[b] != a) {
        return false;
      }
    }
  }
  return matched == A.size();
}

std::vector<mpz_class> count_by_length(const Automaton& A, int k) {
  std::vector<mpz_class> out;
  if (A.size() == 0) return std::vector<mpz_class>(k + 1, 0);
  std::vector<mpz_class> cur(A.size(), 0);
  cur[A.initial()] = 1;
  for (int len = 0;; ++len) {
    mpz_class total = 0;
    for (const auto& c : cur) total += c;
    out.push_back(total);
    if (len == k) break;
    std::vector<mpz_class> nxt(A.size(), 0);
    for (std::size_t q = 0; q < A.size(); ++q) {
      if (cur[q] == 0) continue;
      for (int s = 0; s < A.alphabet_size(); ++s) {
        const int t = A.next(static_cast<int>(q), s);
        if (t != Automaton::kUndefined) nxt[t] += cur[q];
      }
    }
    cur.swap(nxt);
  }
  return out;
}

mpz_class count_accepted(const Automaton& A, int k) { return count_by_length(A, k).back(); }

Automaton restrict_to_parabolic(const Automaton& A, GeneratorSet I) {
  Automaton out(A.alphabet_size());
  if (A.size() == 0) return out;
  std::vector<int> id(A.size(), -1);
  std::vector<int> order{A.initial()};
  id[A.initial()] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int s : I.members()) {
      const int t = A.next(order[i], s);
      if (t == Automaton::kUndefined || id[t] >= 0) continue;
      id[t] = static_cast<int>(order.size());
      order.push_back(t);
    }
  }
  for (int q : order) out.add_state(A.payload(q));
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int s : I.members()) {
      const int t = A.next(order[i], s);
      if (t != Automaton::kUndefined) out.set_transition(static_cast<int>(i), s, id[t]);
    }
  }
  return out;
}

int state_of_element(const Automaton& A, const Element& w) {
  Word reading(w.word().rbegin(), w.word().rend());
  return A.run(reading);
}

Word state_word(const Automaton& A, int q) {
  const Payload& p = A.payload(q);
  if (auto* e = std::get_if<Element>(&p)) return e->word();
  if (auto* s = std::get_if<SmallSetPayload>(&p)) return s->representative;
  throw Error(ErrorKind::Internal, "anonymous state has no word");
}

std::string payload_label(const Payload& p) {
  if (auto* e = std::get_if<Element>(&p)) return word_to_string(e->word());
  if (auto* s = std::get_if<SmallSetPayload>(&p)) {
    std::string out = "{";
    for (std::size_t i = 0; i < s->nodes.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(s->nodes[i]);
    }
    return out + "}";
  }
  return "";
}

std::string to_dot(const Automaton& A, const std::string& name) {
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  out << "  init [shape=point];\n";
  if (A.size() > 0) out << "  init -> q" << A.initial() << ";\n";
  for (std::size_t q = 0; q < A.size(); ++q) {
    std::string label = payload_label(A.payload(static_cast<int>(q)));
    if (label.empty()) label = "q" + std::to_string(q);
    out << "  q" << q << " [label=\"" << label << "\"];\n";
  }
  for (std::size_t q = 0; q < A.size(); ++q) {
    for (int s = 0; s < A.alphabet_size(); ++s) {
      const int t = A.next(static_cast<int>(q), s);
      if (t != Automaton::kUndefined) out << "  q" << q << " -> q" << t << " [label=\"" << s + 1 << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace coxaut

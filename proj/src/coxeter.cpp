#include "coxaut/coxeter.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <mutex>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace coxaut {

std::vector<int> GeneratorSet::members() const {
  std::vector<int> out;
  for (int s = 0; s < 64; ++s) {
    if (contains(s)) out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// CoxeterMatrix

CoxeterMatrix::CoxeterMatrix(int rank) : rank_(rank) {
  if (rank < 0 || rank > 64) throw Error(ErrorKind::InvalidMatrix, "rank must be in [0, 64]");
  entries_.assign(static_cast<std::size_t>(rank) * rank, 2);
  for (int s = 0; s < rank; ++s) entries_[s * rank + s] = 1;
}

void CoxeterMatrix::set(int s, int t, int m) {
  if (s < 0 || t < 0 || s >= rank_ || t >= rank_) throw Error(ErrorKind::InvalidMatrix, "generator out of range");
  if (s == t) throw Error(ErrorKind::InvalidMatrix, "cannot set a diagonal entry");
  if (m != kInfinity && m < 2) throw Error(ErrorKind::InvalidLabel, "label " + std::to_string(m) + " < 2");
  entries_[s * rank_ + t] = m;
  entries_[t * rank_ + s] = m;
}

CoxeterMatrix CoxeterMatrix::from_table(const std::vector<std::vector<int>>& table) {
  const int n = static_cast<int>(table.size());
  CoxeterMatrix m(n);
  for (int s = 0; s < n; ++s) {
    if (static_cast<int>(table[s].size()) != n) throw Error(ErrorKind::InvalidMatrix, "matrix is not square");
    if (table[s][s] != 1) throw Error(ErrorKind::InvalidMatrix, "diagonal entries must be 1");
  }
  for (int s = 0; s < n; ++s) {
    for (int t = s + 1; t < n; ++t) {
      if (table[s][t] != table[t][s]) {
        throw Error(ErrorKind::InvalidMatrix,
                    "asymmetric entries at (" + std::to_string(s + 1) + "," + std::to_string(t + 1) + ")");
      }
      m.set(s, t, table[s][t]);
    }
  }
  return m;
}

std::vector<int> CoxeterMatrix::finite_labels() const {
  std::vector<int> labels;
  for (int s = 0; s < rank_; ++s) {
    for (int t = s + 1; t < rank_; ++t) {
      if (!is_infinite(s, t)) labels.push_back((*this)(s, t));
    }
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

// ---------------------------------------------------------------------------
// Root pool

namespace {
constexpr std::int32_t kUnknown = -1;
constexpr std::int32_t kNegativeImage = -2;

std::string root_key(const RootVector& v) {
  std::string key;
  for (const auto& x : v) {
    for (const auto& q : x.coefficients()) {
      key += q.get_str();
      key += ',';
    }
    key += ';';
  }
  return key;
}
}  // namespace

struct RootRecord {
  RootVector coords;
  std::vector<Scalar> pairings;
  std::vector<std::int8_t> pairing_sign;
  std::vector<std::uint8_t> le_minus_one;
  std::vector<std::int32_t> reflections;
  GeneratorSet support;
};

class RootPool {
 public:
  mutable std::mutex mutex;
  std::deque<RootRecord> records;
  std::unordered_map<std::string, RootId> index;
  std::unordered_map<std::uint64_t, bool> bad_pairs;

  RootId intern_locked(const CoxeterSystem& sys, const RootVector& v) {
    std::string key = root_key(v);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    const int n = sys.rank();
    RootRecord rec;
    rec.coords = v;
    rec.pairings.reserve(n);
    for (int s = 0; s < n; ++s) {
      Scalar b(sys.field());
      for (int t = 0; t < n; ++t) {
        if (v[t].is_zero() || sys.gram(s, t).is_zero()) continue;
        b += sys.gram(s, t) * v[t];
      }
      rec.pairing_sign.push_back(static_cast<std::int8_t>(b.sign()));
      rec.le_minus_one.push_back(b.compare(-1) <= 0 ? 1 : 0);
      rec.pairings.push_back(std::move(b));
      if (v[s].sign() > 0) rec.support.insert(s);
    }
    rec.reflections.assign(n, kUnknown);
    const auto id = static_cast<RootId>(records.size());
    records.push_back(std::move(rec));
    index.emplace(std::move(key), id);
    return id;
  }
};

// ---------------------------------------------------------------------------
// CoxeterSystem

CoxeterSystem::CoxeterSystem(CoxeterMatrix matrix, std::string name)
    : matrix_(std::move(matrix)), name_(std::move(name)), pool_(std::make_unique<RootPool>()) {
  const int n = matrix_.rank();
  // cos(pi/3) is rational, so label 3 does not need to enlarge the field.
  std::vector<int> labels = matrix_.finite_labels();
  std::erase(labels, 3);
  field_ = &FieldContext::make(labels);
  gram_.reserve(static_cast<std::size_t>(n) * n);
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      if (s == t) {
        gram_.emplace_back(*field_, 1);
      } else if (matrix_.is_infinite(s, t)) {
        gram_.emplace_back(*field_, -1);
      } else {
        gram_.push_back(-Scalar::cos_pi_over(*field_, matrix_(s, t)));
      }
    }
  }
  std::lock_guard lock(pool_->mutex);
  for (int s = 0; s < n; ++s) pool_->intern_locked(*this, simple_vector(s));
}

CoxeterSystem::CoxeterSystem(CoxeterSystem&&) noexcept = default;
CoxeterSystem& CoxeterSystem::operator=(CoxeterSystem&&) noexcept = default;
CoxeterSystem::~CoxeterSystem() = default;

RootVector CoxeterSystem::zero_vector() const { return RootVector(rank(), Scalar(*field_)); }

RootVector CoxeterSystem::simple_vector(int s) const {
  RootVector v = zero_vector();
  v[s] = Scalar(*field_, 1);
  return v;
}

int root_vector_sign(const RootVector& v) {
  bool pos = false, neg = false;
  for (const auto& x : v) {
    int sg = x.sign();
    if (sg > 0) pos = true;
    if (sg < 0) neg = true;
  }
  if (pos && !neg) return 1;
  if (neg && !pos) return -1;
  return 0;
}

RootId CoxeterSystem::intern(const RootVector& v) const {
  if (static_cast<int>(v.size()) != rank() || root_vector_sign(v) <= 0) {
    throw Error(ErrorKind::NotPositiveRoot, "only positive vectors can be pooled");
  }
  std::lock_guard lock(pool_->mutex);
  return pool_->intern_locked(*this, v);
}

std::optional<RootId> CoxeterSystem::find(const RootVector& v) const {
  std::lock_guard lock(pool_->mutex);
  auto it = pool_->index.find(root_key(v));
  if (it == pool_->index.end()) return std::nullopt;
  return it->second;
}

const RootVector& CoxeterSystem::root(RootId id) const {
  std::lock_guard lock(pool_->mutex);
  return pool_->records.at(id).coords;
}

std::size_t CoxeterSystem::root_count() const {
  std::lock_guard lock(pool_->mutex);
  return pool_->records.size();
}

SignedRoot CoxeterSystem::reflect(int s, SignedRoot beta) const {
  if (beta.id == simple_root(s)) return {beta.id, !beta.negative};
  std::lock_guard lock(pool_->mutex);
  RootRecord& rec = pool_->records[beta.id];
  std::int32_t image = rec.reflections[s];
  if (image == kUnknown) {
    if (rec.pairing_sign[s] == 0) {
      image = static_cast<std::int32_t>(beta.id);
    } else {
      RootVector v = rec.coords;
      v[s] -= rec.pairings[s] + rec.pairings[s];
      image = static_cast<std::int32_t>(pool_->intern_locked(*this, v));
    }
    // intern_locked may have grown the deque; references to elements stay valid.
    pool_->records[beta.id].reflections[s] = image;
  }
  if (image == kNegativeImage) return {beta.id, !beta.negative};
  return {static_cast<RootId>(image), beta.negative};
}

Scalar CoxeterSystem::pairing(int s, RootId beta) const {
  std::lock_guard lock(pool_->mutex);
  return pool_->records.at(beta).pairings[s];
}

int CoxeterSystem::pairing_sign(int s, RootId beta) const {
  std::lock_guard lock(pool_->mutex);
  return pool_->records.at(beta).pairing_sign[s];
}

bool CoxeterSystem::pairing_at_most_minus_one(int s, RootId beta) const {
  std::lock_guard lock(pool_->mutex);
  return pool_->records.at(beta).le_minus_one[s] != 0;
}

GeneratorSet CoxeterSystem::support(RootId id) const {
  std::lock_guard lock(pool_->mutex);
  return pool_->records.at(id).support;
}

Scalar CoxeterSystem::form(RootId a, RootId b) const {
  std::lock_guard lock(pool_->mutex);
  const RootRecord& ra = pool_->records.at(a);
  const RootRecord& rb = pool_->records.at(b);
  Scalar acc(*field_);
  for (int s = 0; s < rank(); ++s) {
    if (ra.coords[s].is_zero()) continue;
    acc += ra.coords[s] * rb.pairings[s];
  }
  return acc;
}

bool CoxeterSystem::form_at_most_minus_one(RootId a, RootId b) const {
  if (a > b) std::swap(a, b);
  const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
  {
    std::lock_guard lock(pool_->mutex);
    auto it = pool_->bad_pairs.find(key);
    if (it != pool_->bad_pairs.end()) return it->second;
  }
  const bool bad = form(a, b).compare(-1) <= 0;
  std::lock_guard lock(pool_->mutex);
  pool_->bad_pairs.emplace(key, bad);
  return bad;
}

Scalar CoxeterSystem::form(const RootVector& a, const RootVector& b) const {
  Scalar acc(*field_);
  for (int s = 0; s < rank(); ++s) {
    if (a[s].is_zero()) continue;
    for (int t = 0; t < rank(); ++t) {
      if (b[t].is_zero() || gram(s, t).is_zero()) continue;
      acc += a[s] * gram(s, t) * b[t];
    }
  }
  return acc;
}

RootVector CoxeterSystem::reflect_vector(int s, const RootVector& v) const {
  Scalar b(*field_);
  for (int t = 0; t < rank(); ++t) {
    if (v[t].is_zero() || gram(s, t).is_zero()) continue;
    b += gram(s, t) * v[t];
  }
  RootVector out = v;
  out[s] -= b + b;
  return out;
}

// ---------------------------------------------------------------------------
// Presets and parsing

namespace {

std::string trim_copy(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

int parse_label(const std::string& text) {
  std::string t = trim_copy(text);
  if (t == "inf" || t == "infinity" || t == "oo") return kInfinity;
  try {
    std::size_t used = 0;
    int v = std::stoi(t, &used);
    if (used != t.size()) throw Error(ErrorKind::ParseError, "bad label '" + t + "'");
    if (v < 2) throw Error(ErrorKind::InvalidLabel, "label " + t + " < 2");
    return v;
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::ParseError, "bad label '" + t + "'");
  }
}

CoxeterMatrix chain(int n, int default_label = 3) {
  CoxeterMatrix m(n);
  for (int i = 0; i + 1 < n; ++i) m.set(i, i + 1, default_label);
  return m;
}

CoxeterMatrix finite_preset(char family, int n) {
  switch (family) {
    case 'A':
      if (n >= 1) return chain(n);
      break;
    case 'B':
    case 'C':
      if (n >= 2) {
        CoxeterMatrix m = chain(n);
        m.set(0, 1, 4);
        return m;
      }
      break;
    case 'D':
      if (n >= 4) {
        CoxeterMatrix m(n);
        for (int i = 0; i + 2 < n; ++i) m.set(i, i + 1, 3);
        m.set(n - 3, n - 1, 3);
        return m;
      }
      break;
    case 'E':
      if (n >= 6 && n <= 8) {
        CoxeterMatrix m(n);
        m.set(0, 2, 3);
        m.set(1, 3, 3);
        for (int i = 2; i + 1 < n; ++i) m.set(i, i + 1, 3);
        return m;
      }
      break;
    case 'F':
      if (n == 4) {
        CoxeterMatrix m = chain(4);
        m.set(1, 2, 4);
        return m;
      }
      break;
    case 'G':
      if (n == 2) {
        CoxeterMatrix m(2);
        m.set(0, 1, 6);
        return m;
      }
      break;
    case 'H':
      if (n >= 2 && n <= 4) {
        CoxeterMatrix m = chain(n);
        m.set(0, 1, 5);
        return m;
      }
      break;
    default:
      break;
  }
  throw Error(ErrorKind::UnknownPreset, std::string("no finite type ") + family + std::to_string(n));
}

CoxeterMatrix affine_preset(char family, int n) {
  switch (family) {
    case 'A':
      if (n == 1) {
        CoxeterMatrix m(2);
        m.set(0, 1, kInfinity);
        return m;
      }
      if (n >= 2) {
        CoxeterMatrix m = chain(n + 1);
        m.set(n, 0, 3);
        return m;
      }
      break;
    case 'B':
      if (n >= 3) {
        CoxeterMatrix m(n + 1);
        m.set(0, 1, 4);
        for (int i = 1; i + 1 < n; ++i) m.set(i, i + 1, 3);
        m.set(n - 2, n, 3);
        return m;
      }
      break;
    case 'C':
      if (n >= 2) {
        CoxeterMatrix m = chain(n + 1);
        m.set(0, 1, 4);
        m.set(n - 1, n, 4);
        return m;
      }
      break;
    case 'D':
      if (n >= 4) {
        CoxeterMatrix m(n + 1);
        m.set(0, 2, 3);
        m.set(1, 2, 3);
        for (int i = 2; i + 1 <= n - 2; ++i) m.set(i, i + 1, 3);
        m.set(n - 1, n - 2, 3);
        m.set(n, n - 2, 3);
        return m;
      }
      break;
    case 'E':
      if (n >= 6 && n <= 8) {
        CoxeterMatrix fin = finite_preset('E', n);
        CoxeterMatrix m(n + 1);
        for (int s = 0; s < n; ++s) {
          for (int t = s + 1; t < n; ++t) {
            if (fin(s, t) != 2) m.set(s, t, fin(s, t));
          }
        }
        const int attach = n == 6 ? 1 : (n == 7 ? 0 : 7);
        m.set(n, attach, 3);
        return m;
      }
      break;
    case 'F':
      if (n == 4) {
        CoxeterMatrix m = finite_preset('F', 4);
        CoxeterMatrix out(5);
        for (int s = 0; s < 4; ++s) {
          for (int t = s + 1; t < 4; ++t) {
            if (m(s, t) != 2) out.set(s, t, m(s, t));
          }
        }
        out.set(4, 0, 3);
        return out;
      }
      break;
    case 'G':
      if (n == 2) {
        CoxeterMatrix m = chain(3);
        m.set(1, 2, 6);
        return m;
      }
      break;
    default:
      break;
  }
  throw Error(ErrorKind::UnknownPreset, std::string("no affine type ") + family + std::to_string(n));
}

// Splits "X<digits>" into family and rank.
bool split_type(const std::string& name, char& family, int& n) {
  if (name.size() < 2 || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  family = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  }
  n = std::stoi(name.substr(1));
  return true;
}

std::vector<std::string> parenthesized_args(const std::string& name, const std::string& head) {
  const std::string body = name.substr(head.size());
  if (body.size() < 2 || body.front() != '(' || body.back() != ')') {
    throw Error(ErrorKind::UnknownPreset, "malformed preset '" + name + "'");
  }
  std::vector<std::string> args;
  std::stringstream ss(body.substr(1, body.size() - 2));
  std::string item;
  while (std::getline(ss, item, ',')) args.push_back(trim_copy(item));
  return args;
}

CoxeterMatrix parse_matrix_block(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int rank = -1;
  CoxeterMatrix m;
  std::vector<std::pair<std::pair<int, int>, int>> pending;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "rank") {
      if (!(ls >> rank) || rank < 1) throw Error(ErrorKind::ParseError, "bad rank line");
      m = CoxeterMatrix(rank);
    } else if (tok == "m") {
      if (rank < 0) throw Error(ErrorKind::ParseError, "'m' line before 'rank'");
      int i = 0, j = 0;
      std::string value;
      if (!(ls >> i >> j >> value)) throw Error(ErrorKind::ParseError, "bad 'm' line: " + line);
      if (i < 1 || j < 1 || i > rank || j > rank) throw Error(ErrorKind::InvalidMatrix, "index out of range");
      if (i == j) {
        if (value != "1") throw Error(ErrorKind::InvalidMatrix, "diagonal entries must be 1");
        continue;
      }
      pending.push_back({{i - 1, j - 1}, parse_label(value)});
    } else if (tok == "type") {
      continue;
    } else {
      throw Error(ErrorKind::ParseError, "unexpected token '" + tok + "'");
    }
  }
  if (rank < 0) throw Error(ErrorKind::ParseError, "missing 'rank' line");
  // Entries given twice must agree.
  std::vector<std::vector<int>> seen(rank, std::vector<int>(rank, -1));
  for (const auto& [ij, v] : pending) {
    auto [i, j] = ij;
    if (seen[j][i] != -1 && seen[j][i] != v) {
      throw Error(ErrorKind::InvalidMatrix,
                  "asymmetric entries at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }
    if (seen[i][j] != -1 && seen[i][j] != v) throw Error(ErrorKind::InvalidMatrix, "conflicting entries");
    seen[i][j] = v;
    m.set(i, j, v);
  }
  return m;
}

}  // namespace

CoxeterMatrix preset_matrix(std::string_view raw) {
  std::string name = trim_copy(raw);
  std::string lower;
  for (char c : name) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  char family = 0;
  int n = 0;
  if (lower.rfind("triangle", 0) == 0) {
    auto args = parenthesized_args(lower, "triangle");
    if (args.size() != 3) throw Error(ErrorKind::UnknownPreset, "triangle needs three labels");
    CoxeterMatrix m(3);
    m.set(0, 1, parse_label(args[0]));
    m.set(0, 2, parse_label(args[1]));
    m.set(1, 2, parse_label(args[2]));
    return m;
  }
  if (lower.rfind("i2", 0) == 0 && lower.size() > 2 && lower[2] == '(') {
    auto args = parenthesized_args(lower, "i2");
    if (args.size() != 1) throw Error(ErrorKind::UnknownPreset, "I2 needs one label");
    CoxeterMatrix m(2);
    m.set(0, 1, parse_label(args[0]));
    return m;
  }
  for (const std::string prefix : {"affine:", "~", "tilde:"}) {
    if (name.rfind(prefix, 0) == 0) {
      if (split_type(name.substr(prefix.size()), family, n)) return affine_preset(family, n);
      throw Error(ErrorKind::UnknownPreset, "unknown affine preset '" + name + "'");
    }
  }
  if (split_type(name, family, n)) return finite_preset(family, n);
  throw Error(ErrorKind::UnknownPreset, "unknown preset '" + name + "'");
}

CoxeterSystem parse_coxeter_system(std::string_view spec) {
  std::string text = trim_copy(spec);
  if (text.empty()) throw Error(ErrorKind::ParseError, "empty group specification");
  if (text.rfind("rank", 0) == 0 || text.find("\nrank") != std::string::npos) {
    return CoxeterSystem(parse_matrix_block(text), "matrix");
  }
  if (text.rfind("type", 0) == 0 && text.size() > 4 && std::isspace(static_cast<unsigned char>(text[4]))) {
    text = trim_copy(text.substr(4));
  }
  return CoxeterSystem(preset_matrix(text), text);
}

// ---------------------------------------------------------------------------
// Elements

bool Element::has_left_descent(int s) const {
  return std::binary_search(inv_.begin(), inv_.end(), static_cast<RootId>(s));
}

GeneratorSet Element::left_descents() const {
  GeneratorSet d;
  // Simple roots carry the smallest ids, so they sit at the front.
  for (RootId r : inv_) {
    if (r >= static_cast<RootId>(rank_)) break;
    d.insert(static_cast<int>(r));
  }
  return d;
}

bool Element::contains_root(RootId r) const { return std::binary_search(inv_.begin(), inv_.end(), r); }

bool Element::shortlex_less(const Element& a, const Element& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return a.word_ < b.word_;
}

std::size_t ElementHash::operator()(const Element& e) const {
  std::size_t h = 1469598103934665603ULL;
  for (RootId r : e.inversions()) {
    h ^= r + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

SignedRoot apply(const CoxeterSystem& sys, const Element& w, SignedRoot beta) {
  const Word& word = w.word();
  for (std::size_t k = word.size(); k-- > 0;) beta = sys.reflect(word[k], beta);
  return beta;
}

Element mult_left(const CoxeterSystem& sys, int s, const Element& w) {
  Element out;
  out.rank_ = sys.rank();
  const auto alpha = sys.simple_root(s);
  if (!w.has_left_descent(s)) {
    out.word_.reserve(w.word_.size() + 1);
    out.word_.push_back(s);
    out.word_.insert(out.word_.end(), w.word_.begin(), w.word_.end());
    out.seq_.reserve(w.seq_.size() + 1);
    out.seq_.push_back(alpha);
    for (RootId r : w.seq_) {
      SignedRoot img = sys.reflect(s, {r, false});
      if (img.negative) throw Error(ErrorKind::Internal, "ascent produced a negative inversion");
      out.seq_.push_back(img.id);
    }
  } else {
    // Exchange: drop the letter whose inversion is alpha_s.
    auto pos = std::find(w.seq_.begin(), w.seq_.end(), alpha);
    const auto j = static_cast<std::size_t>(pos - w.seq_.begin());
    for (std::size_t i = 0; i < w.word_.size(); ++i) {
      if (i == j) continue;
      out.word_.push_back(w.word_[i]);
      if (i < j) {
        out.seq_.push_back(w.seq_[i]);
      } else {
        SignedRoot img = sys.reflect(s, {w.seq_[i], false});
        if (img.negative) throw Error(ErrorKind::Internal, "exchange produced a negative inversion");
        out.seq_.push_back(img.id);
      }
    }
  }
  out.inv_ = out.seq_;
  std::sort(out.inv_.begin(), out.inv_.end());
  return out;
}

Element mult_right(const CoxeterSystem& sys, const Element& w, int s) {
  SignedRoot image = apply(sys, w, {sys.simple_root(s), false});
  Element out;
  out.rank_ = sys.rank();
  if (!image.negative) {
    out.word_ = w.word_;
    out.word_.push_back(s);
    out.seq_ = w.seq_;
    out.seq_.push_back(image.id);
    out.inv_ = w.inv_;
    out.inv_.insert(std::lower_bound(out.inv_.begin(), out.inv_.end(), image.id), image.id);
    return out;
  }
  auto pos = std::find(w.seq_.begin(), w.seq_.end(), image.id);
  const auto j = static_cast<std::size_t>(pos - w.seq_.begin());
  for (std::size_t i = 0; i < w.word_.size(); ++i) {
    if (i != j) out.word_.push_back(w.word_[i]);
  }
  out.seq_.assign(w.seq_.begin(), w.seq_.begin() + static_cast<std::ptrdiff_t>(j));
  for (std::size_t i = j; i < out.word_.size(); ++i) {
    SignedRoot r{sys.simple_root(out.word_[i]), false};
    for (std::size_t k = i; k-- > 0;) r = sys.reflect(out.word_[k], r);
    out.seq_.push_back(r.id);
  }
  out.inv_ = out.seq_;
  std::sort(out.inv_.begin(), out.inv_.end());
  return out;
}

Element element_from_word(const CoxeterSystem& sys, const Word& word) {
  Element w;
  for (int s : word) {
    if (s < 0 || s >= sys.rank()) throw Error(ErrorKind::ParseError, "letter out of range");
    w = mult_right(sys, w, s);
  }
  return w;
}

bool is_reduced_word(const CoxeterSystem& sys, const Word& word) {
  Element w;
  for (int s : word) {
    Element next = mult_right(sys, w, s);
    if (next.length() <= w.length()) return false;
    w = std::move(next);
  }
  return true;
}

bool weak_leq(const Element& u, const Element& w) {
  if (u.length() > w.length()) return false;
  return std::includes(w.inversions().begin(), w.inversions().end(), u.inversions().begin(), u.inversions().end());
}

std::vector<Element> prefixes(const CoxeterSystem& sys, const Element& w) {
  std::unordered_set<Element, ElementHash> seen{w};
  std::vector<Element> out{w};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (int s = 0; s < sys.rank(); ++s) {
      if (!apply(sys, out[i], {sys.simple_root(s), false}).negative) continue;
      Element p = mult_right(sys, out[i], s);
      if (seen.insert(p).second) out.push_back(std::move(p));
    }
  }
  std::sort(out.begin(), out.end(), Element::shortlex_less);
  return out;
}

std::vector<Element> suffixes(const CoxeterSystem& sys, const Element& w) {
  std::unordered_set<Element, ElementHash> seen{w};
  std::vector<Element> out{w};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (int s : out[i].left_descents().members()) {
      Element p = mult_left(sys, s, out[i]);
      if (seen.insert(p).second) out.push_back(std::move(p));
    }
  }
  std::sort(out.begin(), out.end(), Element::shortlex_less);
  return out;
}

CosetSplit coset_split(const CoxeterSystem& sys, const Element& w, GeneratorSet I) {
  Element rest = w;
  Element par;
  for (;;) {
    GeneratorSet d = rest.left_descents() & I;
    if (d.empty()) break;
    const int s = d.members().front();
    rest = mult_left(sys, s, rest);
    par = mult_right(sys, par, s);
  }
  return {std::move(par), std::move(rest)};
}

std::vector<Element> ball(const CoxeterSystem& sys, int radius) {
  std::unordered_set<Element, ElementHash> seen;
  std::vector<Element> out{Element{}};
  seen.insert(out.front());
  std::size_t level_begin = 0;
  for (int len = 0; len < radius; ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (int s = 0; s < sys.rank(); ++s) {
        Element next = mult_right(sys, out[i], s);
        if (next.length() <= out[i].length()) continue;
        if (seen.insert(next).second) out.push_back(std::move(next));
      }
    }
    level_begin = level_end;
  }
  return out;
}

std::string word_to_string(const Word& w) {
  if (w.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(w[i] + 1);
  }
  return out;
}

Word parse_word(std::string_view text, int rank) {
  std::string t = trim_copy(text);
  Word w;
  if (t.empty() || t == "e") return w;
  for (char& c : t) {
    if (c == '.' || c == '-') c = ' ';
  }
  std::istringstream in(t);
  std::string tok;
  while (in >> tok) {
    int s = 0;
    try {
      std::size_t used = 0;
      s = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::ParseError, "bad letter '" + tok + "'");
    }
    if (s < 1 || s > rank) throw Error(ErrorKind::ParseError, "letter " + tok + " out of range");
    w.push_back(s - 1);
  }
  return w;
}

}  // namespace coxaut

#include "dgla/assoc_series.hpp"

#include <algorithm>
#include <atomic>
#include <map>

namespace dgla {

namespace {
std::atomic<std::size_t> g_max_terms{0};
}

void set_max_terms(std::size_t limit) { g_max_terms.store(limit); }
std::size_t max_terms() { return g_max_terms.load(); }

// ---------------------------------------------------------------- Word

Word::Word(std::initializer_list<Generator> letters) {
  for (Generator g : letters) push_back(g);
}

void Word::push_back(Generator g) {
  if (len_ >= kMaxWordLength) throw Error("word length exceeds supported maximum");
  letters_[len_++] = g.id();
}

Word Word::concat(const Word& other) const {
  if (len_ + other.len_ > kMaxWordLength) throw Error("word length exceeds supported maximum");
  Word w = *this;
  for (int i = 0; i < other.len_; ++i) w.letters_[w.len_++] = other.letters_[static_cast<std::size_t>(i)];
  return w;
}

Word Word::reversed() const {
  Word w = *this;
  std::reverse(w.letters_.begin(), w.letters_.begin() + len_);
  return w;
}

Word Word::prefix(int n) const {
  Word w;
  for (int i = 0; i < n && i < len_; ++i) w.letters_[w.len_++] = letters_[static_cast<std::size_t>(i)];
  return w;
}

Word Word::suffix_from(int i) const {
  Word w;
  for (int k = i; k < len_; ++k) w.letters_[w.len_++] = letters_[static_cast<std::size_t>(k)];
  return w;
}

int Word::degree() const {
  int d = 0;
  for (int i = 0; i < len_; ++i) d += (*this)[i].degree();
  return d;
}

std::string Word::to_string() const {
  if (len_ == 0) return "1";
  std::string s;
  for (int i = 0; i < len_; ++i) {
    if (i) s += ' ';
    s += (*this)[i].name();
  }
  return s;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  const int n = std::min(a.len_, b.len_);
  for (int i = 0; i < n; ++i) {
    const auto x = a.letters_[static_cast<std::size_t>(i)];
    const auto y = b.letters_[static_cast<std::size_t>(i)];
    if (x != y) return x <=> y;
  }
  return a.len_ <=> b.len_;
}

std::size_t Word::hash() const {
  std::size_t h = 1469598103934665603ULL ^ len_;
  for (int i = 0; i < len_; ++i) {
    h ^= letters_[static_cast<std::size_t>(i)];
    h *= 1099511628211ULL;
  }
  return h;
}

// ---------------------------------------------------------------- AssocSeries

AssocSeries::AssocSeries(int max_length) : max_length_(max_length) {
  if (max_length < 0 || max_length > kMaxWordLength) throw Error("series truncation length out of range");
}

AssocSeries AssocSeries::generator(Generator g, int max_length) {
  AssocSeries s(max_length);
  s.add_term(Word{g}, 1);
  return s;
}

AssocSeries AssocSeries::word(const Word& w, const Rational& c, int max_length) {
  AssocSeries s(max_length);
  s.add_term(w, c);
  return s;
}

AssocSeries AssocSeries::scalar(const Rational& c, int max_length) {
  AssocSeries s(max_length);
  s.add_term(Word{}, c);
  return s;
}

Rational AssocSeries::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

void AssocSeries::check_limit() const {
  const auto limit = g_max_terms.load(std::memory_order_relaxed);
  if (limit != 0 && terms_.size() > limit) {
    throw TermLimitError("term count exceeded DGLA_MAX_TERMS=" + std::to_string(limit));
  }
}

void AssocSeries::add_term(const Word& w, const Rational& c) {
  if (w.size() > max_length_ || sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  } else {
    check_limit();
  }
}

void AssocSeries::add_scaled(const AssocSeries& other, const Rational& c) {
  if (sgn(c) == 0) return;
  for (const auto& [w, x] : other.terms_) add_term(w, x * c);
}

AssocSeries AssocSeries::truncated(int max_length) const {
  AssocSeries s(std::min(max_length, max_length_));
  for (const auto& [w, c] : terms_) {
    if (w.size() <= s.max_length_) s.terms_.emplace(w, c);
  }
  return s;
}

AssocSeries AssocSeries::length_component(int length) const {
  AssocSeries s(max_length_);
  for (const auto& [w, c] : terms_) {
    if (w.size() == length) s.terms_.emplace(w, c);
  }
  return s;
}

int AssocSeries::min_length() const {
  int m = max_length_ + 1;
  for (const auto& [w, c] : terms_) m = std::min(m, w.size());
  return m;
}

int AssocSeries::max_stored_length() const {
  int m = -1;
  for (const auto& [w, c] : terms_) m = std::max(m, w.size());
  return m;
}

std::optional<int> AssocSeries::degree() const {
  std::optional<int> d;
  for (const auto& [w, c] : terms_) {
    const int wd = w.degree();
    if (d && *d != wd) return std::nullopt;
    d = wd;
  }
  return d;
}

bool AssocSeries::is_homogeneous() const { return is_zero() || degree().has_value(); }

bool AssocSeries::has_degree(int d) const {
  for (const auto& [w, c] : terms_) {
    if (w.degree() != d) return false;
  }
  return true;
}

std::vector<std::pair<Word, Rational>> AssocSeries::sorted_terms() const {
  std::vector<std::tuple<int, std::string, Word, Rational>> keyed;
  keyed.reserve(terms_.size());
  for (const auto& [w, c] : terms_) keyed.emplace_back(w.size(), w.to_string(), w, c);
  std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
    if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) < std::get<0>(y);
    return std::get<1>(x) < std::get<1>(y);
  });
  std::vector<std::pair<Word, Rational>> out;
  out.reserve(keyed.size());
  for (auto& k : keyed) out.emplace_back(std::get<2>(k), std::get<3>(k));
  return out;
}

std::vector<std::pair<Word, Rational>> AssocSeries::lex_terms() const {
  std::vector<std::pair<Word, Rational>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

AssocSeries& AssocSeries::operator+=(const AssocSeries& other) {
  max_length_ = std::min(max_length_, other.max_length_);
  if (max_length_ < max_stored_length()) *this = truncated(max_length_);
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

AssocSeries& AssocSeries::operator-=(const AssocSeries& other) {
  max_length_ = std::min(max_length_, other.max_length_);
  if (max_length_ < max_stored_length()) *this = truncated(max_length_);
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

AssocSeries& AssocSeries::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, x] : terms_) x *= c;
  return *this;
}

AssocSeries AssocSeries::operator-() const {
  AssocSeries s = *this;
  for (auto& [w, x] : s.terms_) x = -x;
  return s;
}

namespace {

// Terms bucketed by word length, so products can stop early.
std::vector<std::vector<std::pair<Word, Rational>>> by_length(const AssocSeries& s) {
  std::vector<std::vector<std::pair<Word, Rational>>> buckets(static_cast<std::size_t>(s.max_length() + 1));
  for (const auto& [w, c] : s.terms()) buckets[static_cast<std::size_t>(w.size())].emplace_back(w, c);
  return buckets;
}

}  // namespace

AssocSeries operator*(const AssocSeries& a, const AssocSeries& b) {
  return multiply(a, b, std::min(a.max_length(), b.max_length()));
}

AssocSeries multiply(const AssocSeries& a, const AssocSeries& b, int max_len) {
  AssocSeries out(max_len);
  if (a.is_zero() || b.is_zero()) return out;
  const auto bb = by_length(b);
  Rational prod;
  for (const auto& [wa, ca] : a.terms()) {
    const int room = max_len - wa.size();
    for (int len = 0; len <= room && len < static_cast<int>(bb.size()); ++len) {
      for (const auto& [wb, cb] : bb[static_cast<std::size_t>(len)]) {
        prod = ca * cb;
        out.add_term(wa.concat(wb), prod);
      }
    }
  }
  return out;
}

AssocSeries commutator(const AssocSeries& a, const AssocSeries& b) {
  const int max_len = std::min(a.max_length(), b.max_length());
  AssocSeries out(max_len);
  if (a.is_zero() || b.is_zero()) return out;
  const auto bb = by_length(b);
  Rational prod;
  for (const auto& [wa, ca] : a.terms()) {
    const int room = max_len - wa.size();
    const int da = wa.degree();
    for (int len = 0; len <= room && len < static_cast<int>(bb.size()); ++len) {
      for (const auto& [wb, cb] : bb[static_cast<std::size_t>(len)]) {
        prod = ca * cb;
        out.add_term(wa.concat(wb), prod);
        if (koszul_sign(da, wb.degree()) < 0) {
          out.add_term(wb.concat(wa), prod);
        } else {
          out.add_term(wb.concat(wa), -prod);
        }
      }
    }
  }
  return out;
}

AssocSeries exp_series(const AssocSeries& x) {
  if (sgn(x.coefficient(Word{})) != 0) throw Error("exp_series requires zero constant term");
  const int max_len = x.max_length();
  AssocSeries result = AssocSeries::scalar(1, max_len);
  AssocSeries power = AssocSeries::scalar(1, max_len);
  for (int k = 1; k <= max_len; ++k) {
    power = power * x;
    power *= Rational(1, k);
    if (power.is_zero()) break;
    result += power;
  }
  return result;
}

AssocSeries log1p_series(const AssocSeries& z) {
  if (sgn(z.coefficient(Word{})) != 0) throw Error("log1p_series requires zero constant term");
  const int max_len = z.max_length();
  AssocSeries result(max_len);
  AssocSeries power = AssocSeries::scalar(1, max_len);
  for (int k = 1; k <= max_len; ++k) {
    power = power * z;
    if (power.is_zero()) break;
    result += power * Rational(k % 2 ? 1 : -1, k);
  }
  return result;
}

namespace {

using LexTerms = std::vector<std::pair<Word, Rational>>;

// Horner evaluation over a lexicographically sorted range sharing a prefix of
// length `depth`: value = c_prefix + sum_s image(s) * value(range starting with s).
AssocSeries substitute_range(LexTerms::const_iterator begin, LexTerms::const_iterator end, int depth,
                             const LetterImage& image, int max_len) {
  AssocSeries out(max_len);
  auto it = begin;
  while (it != end && it->first.size() == depth) {
    out.add_term(Word{}, it->second);
    ++it;
  }
  while (it != end) {
    const Generator letter = it->first[depth];
    auto group_end = it;
    while (group_end != end && group_end->first[depth] == letter) ++group_end;
    const AssocSeries* img = image(letter);
    if (img == nullptr) throw Error("no image for generator '" + letter.name() + "'");
    if (img->max_length() < max_len) throw Error("letter image truncated below requested length");
    const int room = max_len - img->min_length();
    if (room >= 0) {
      AssocSeries tail = substitute_range(it, group_end, depth + 1, image, room);
      out.add_scaled(multiply(*img, tail, max_len), 1);
    }
    it = group_end;
  }
  return out;
}

}  // namespace

AssocSeries substitute(const AssocSeries& x, const LetterImage& image, int max_length) {
  const auto terms = x.lex_terms();
  return substitute_range(terms.begin(), terms.end(), 0, image, max_length);
}

std::string AssocSeries::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, c] : sorted_terms()) {
    if (!first) s += " + ";
    first = false;
    s += "(" + dgla::to_string(c) + ")";
    if (!w.empty()) s += "*" + w.to_string();
  }
  return s;
}

}  // namespace dgla

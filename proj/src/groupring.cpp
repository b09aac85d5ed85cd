#include "whitney/groupring.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>

#include "whitney/errors.hpp"

namespace whitney {

std::vector<int> reduce_letters(std::vector<int> letters) {
  std::vector<int> out;
  out.reserve(letters.size());
  for (int l : letters) {
    if (l == 0) throw InvalidInput("generator index 0 is not a letter");
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

GroupElement GroupElement::word(std::vector<int> letters) {
  GroupElement g;
  g.kind_ = Kind::FreeWord;
  g.letters_ = reduce_letters(std::move(letters));
  return g;
}

GroupElement GroupElement::generator(int index, int exponent) {
  if (index <= 0) throw InvalidInput("generator index must be positive");
  std::vector<int> letters(static_cast<std::size_t>(std::abs(exponent)), exponent > 0 ? index : -index);
  return word(std::move(letters));
}

GroupElement GroupElement::lattice(long a, long b) {
  GroupElement g;
  g.kind_ = Kind::Lattice;
  g.lattice_ = {a, b};
  return g;
}

bool GroupElement::is_identity() const {
  return kind_ == Kind::FreeWord ? letters_.empty() : lattice_ == IVec2{};
}

int GroupElement::max_generator() const {
  int m = 0;
  for (int l : letters_) m = std::max(m, std::abs(l));
  return m;
}

GroupElement GroupElement::inverse() const {
  GroupElement g = *this;
  if (kind_ == Kind::Lattice) {
    g.lattice_ = -lattice_;
  } else {
    std::reverse(g.letters_.begin(), g.letters_.end());
    for (int& l : g.letters_) l = -l;
  }
  return g;
}

std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  if (a.kind_ == GroupElement::Kind::Lattice) return a.lattice_ <=> b.lattice_;
  if (a.letters_.size() != b.letters_.size()) return a.letters_.size() <=> b.letters_.size();
  for (std::size_t i = 0; i < a.letters_.size(); ++i) {
    const int ra = letter_rank(a.letters_[i]);
    const int rb = letter_rank(b.letters_[i]);
    if (ra != rb) return ra <=> rb;
  }
  return std::strong_ordering::equal;
}

std::string GroupElement::to_string() const {
  if (kind_ == Kind::Lattice)
    return "(" + std::to_string(lattice_.a) + "," + std::to_string(lattice_.b) + ")";
  if (letters_.empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < letters_.size()) {
    const int gen = std::abs(letters_[i]);
    const int sign = letters_[i] > 0 ? 1 : -1;
    std::size_t j = i;
    while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
    const int power = sign * static_cast<int>(j - i);
    if (!out.empty()) out += '.';
    out += "g" + std::to_string(gen);
    if (power != 1) out += "^" + std::to_string(power);
    i = j;
  }
  return out;
}

namespace {

long parse_long(std::string_view s, std::string_view context) {
  long v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidInput("malformed integer '" + std::string(s) + "' in " + std::string(context));
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

GroupElement GroupElement::parse(std::string_view text) {
  text = trim(text);
  if (text == "1") return GroupElement();
  if (!text.empty() && text.front() == '(') {
    if (text.back() != ')') throw InvalidInput("unterminated lattice element '" + std::string(text) + "'");
    const auto inner = text.substr(1, text.size() - 2);
    const auto comma = inner.find(',');
    if (comma == std::string_view::npos) throw InvalidInput("lattice element needs two entries");
    return lattice(parse_long(trim(inner.substr(0, comma)), text),
                   parse_long(trim(inner.substr(comma + 1)), text));
  }
  std::vector<int> letters;
  while (!text.empty()) {
    const auto dot = text.find('.');
    const auto factor = text.substr(0, dot);
    text = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (factor.size() < 2 || factor.front() != 'g')
      throw InvalidInput("malformed word factor '" + std::string(factor) + "'");
    const auto caret = factor.find('^');
    const long gen = parse_long(factor.substr(1, caret == std::string_view::npos ? factor.npos : caret - 1), factor);
    const long power = caret == std::string_view::npos ? 1 : parse_long(factor.substr(caret + 1), factor);
    if (gen <= 0) throw InvalidInput("generator index must be positive");
    for (long k = 0; k < std::abs(power); ++k) letters.push_back(power > 0 ? static_cast<int>(gen) : -static_cast<int>(gen));
  }
  return word(std::move(letters));
}

GroupElement multiply(const GroupElement& a, const GroupElement& b) {
  if (a.kind() != b.kind()) throw VariantMismatch("cannot multiply a free word by a lattice element");
  if (a.kind() == GroupElement::Kind::Lattice) return GroupElement::lattice(a.lattice_vector() + b.lattice_vector());
  std::vector<int> letters = a.letters();
  letters.insert(letters.end(), b.letters().begin(), b.letters().end());
  return GroupElement::word(std::move(letters));
}

FreeLoopClass conjugacy_class(const GroupElement& a) {
  if (a.kind() == GroupElement::Kind::Lattice) return FreeLoopClass(a);
  const auto& w = a.letters();
  std::size_t lo = 0;
  std::size_t hi = w.size();
  while (hi - lo >= 2 && w[lo] == -w[hi - 1]) {
    ++lo;
    --hi;
  }
  const std::vector<int> core(w.begin() + static_cast<long>(lo), w.begin() + static_cast<long>(hi));
  const std::size_t n = core.size();
  std::size_t best = 0;
  for (std::size_t s = 1; s < n; ++s) {
    for (std::size_t k = 0; k < n; ++k) {
      const int rs = letter_rank(core[(s + k) % n]);
      const int rb = letter_rank(core[(best + k) % n]);
      if (rs != rb) {
        if (rs < rb) best = s;
        break;
      }
    }
  }
  std::vector<int> rotated(n);
  for (std::size_t k = 0; k < n; ++k) rotated[k] = core[(best + k) % n];
  return FreeLoopClass(GroupElement::word(std::move(rotated)));
}

std::string HalfInt::to_string() const {
  if (is_integer()) return std::to_string(doubled / 2);
  return std::to_string(doubled) + "/2";
}

RingElement RingElement::term(const GroupElement& g, HalfInt c) {
  RingElement r(Basis::Based);
  r.add(g, c);
  return r;
}

RingElement RingElement::term(const FreeLoopClass& cls, HalfInt c) {
  RingElement r(Basis::Free);
  r.add(cls, c);
  return r;
}

bool RingElement::is_integral() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.second % 2 == 0; });
}

HalfInt RingElement::coefficient(const GroupElement& g) const {
  const auto it = terms_.find(g);
  return it == terms_.end() ? HalfInt{} : HalfInt{it->second};
}

void RingElement::add_doubled(const GroupElement& key, std::int64_t d) {
  if (d == 0) return;
  auto [it, inserted] = terms_.try_emplace(key, d);
  if (!inserted) {
    it->second += d;
    if (it->second == 0) terms_.erase(it);
  }
}

void RingElement::add(const GroupElement& g, HalfInt c) {
  if (basis_ != Basis::Based) throw VariantMismatch("based term added to a free-loop ring element");
  add_doubled(g, c.doubled);
}

void RingElement::add(const FreeLoopClass& cls, HalfInt c) {
  if (basis_ != Basis::Free) throw VariantMismatch("free-loop term added to a based ring element");
  add_doubled(cls.canonical(), c.doubled);
}

void RingElement::check_basis(const RingElement& other) const {
  // The zero element adapts to either basis.
  if (basis_ != other.basis_ && !terms_.empty() && !other.terms_.empty())
    throw VariantMismatch("ring elements over different bases");
}

RingElement& RingElement::operator+=(const RingElement& other) {
  check_basis(other);
  if (terms_.empty()) basis_ = other.basis_;
  for (const auto& [k, d] : other.terms_) add_doubled(k, d);
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& other) {
  check_basis(other);
  if (terms_.empty()) basis_ = other.basis_;
  for (const auto& [k, d] : other.terms_) add_doubled(k, -d);
  return *this;
}

RingElement RingElement::operator-() const {
  RingElement r = *this;
  for (auto& kv : r.terms_) kv.second = -kv.second;
  return r;
}

RingElement RingElement::scaled(HalfInt c) const {
  RingElement r(basis_);
  for (const auto& [k, d] : terms_) {
    const std::int64_t prod = d * c.doubled;
    if (prod % 2 != 0) throw InvalidInput("scaling leaves the half-integers");
    r.add_doubled(k, prod / 2);
  }
  return r;
}

HalfInt RingElement::augmentation() const {
  HalfInt total;
  for (const auto& kv : terms_) total.doubled += kv.second;
  return total;
}

bool operator==(const RingElement& a, const RingElement& b) {
  if (a.terms_.empty() && b.terms_.empty()) return true;
  return a.basis_ == b.basis_ && a.terms_ == b.terms_;
}

std::string RingElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [key, d] : terms_) {
    const bool negative = d < 0;
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    out += HalfInt{negative ? -d : d}.to_string();
    out += "*";
    out += basis_ == Basis::Free ? "[" + key.to_string() + "]" : key.to_string();
  }
  return out;
}

RingElement RingElement::parse(std::string_view text, Basis empty_basis) {
  text = trim(text);
  if (text == "0" || text.empty()) return RingElement(empty_basis);
  RingElement result(empty_basis);
  bool first = true;
  bool basis_known = false;
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  while (true) {
    skip_space();
    if (i >= text.size()) break;
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip_space();
    } else if (!first) {
      throw InvalidInput("expected '+' or '-' at offset " + std::to_string(i));
    }
    first = false;
    const std::size_t star = text.find('*', i);
    if (star == std::string_view::npos) throw InvalidInput("term without '*' in ring element");
    const auto coef_text = trim(text.substr(i, star - i));
    std::int64_t doubled = 0;
    if (const auto slash = coef_text.find('/'); slash != std::string_view::npos) {
      if (trim(coef_text.substr(slash + 1)) != "2") throw InvalidInput("only halves are allowed as fractions");
      doubled = parse_long(trim(coef_text.substr(0, slash)), coef_text);
    } else {
      doubled = 2 * parse_long(coef_text, coef_text);
    }
    i = star + 1;
    skip_space();
    std::size_t end = i;
    bool free_key = false;
    if (i < text.size() && (text[i] == '[' || text[i] == '(')) {
      const char close = text[i] == '[' ? ']' : ')';
      free_key = text[i] == '[';
      end = text.find(close, i);
      if (end == std::string_view::npos) throw InvalidInput("unterminated key in ring element");
      ++end;
    } else {
      while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    }
    auto key_text = text.substr(i, end - i);
    if (free_key) key_text = key_text.substr(1, key_text.size() - 2);
    const Basis key_basis = free_key ? Basis::Free : Basis::Based;
    if (!basis_known) {
      result = RingElement(key_basis);
      basis_known = true;
    } else if (key_basis != result.basis_) {
      throw VariantMismatch("ring element text mixes based and free keys");
    }
    const GroupElement g = GroupElement::parse(key_text);
    if (free_key)
      result.add(conjugacy_class(g), HalfInt{sign * doubled});
    else
      result.add(g, HalfInt{sign * doubled});
    i = end;
  }
  return result;
}

bool is_pushoff_trivial(const RingElement& x, const FreeLoopClass& gamma_class) {
  if (x.is_zero()) return true;
  if (x.basis() != Basis::Free) throw VariantMismatch("push-off test needs a free-loop ring element");
  if (gamma_class.is_trivial()) return false;
  const FreeLoopClass trivial = conjugacy_class(gamma_class.canonical().kind() == GroupElement::Kind::Lattice
                                                    ? GroupElement::lattice(0, 0)
                                                    : GroupElement());
  if (x.size() != 2) return false;
  const HalfInt c = x.coefficient(gamma_class);
  const HalfInt one = x.coefficient(trivial);
  return c.is_integer() && c.doubled != 0 && one.doubled == -c.doubled;
}

}  // namespace whitney

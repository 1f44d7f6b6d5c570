#include "coarse/group.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include "coarse/error.hpp"

namespace coarse {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  return __builtin_add_overflow(a, b, &r) ? kSaturated : r;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  return __builtin_mul_overflow(a, b, &r) ? kSaturated : r;
}

std::uint64_t sat_pow(std::uint64_t base, std::int64_t exp) {
  std::uint64_t r = 1;
  for (std::int64_t i = 0; i < exp; ++i) {
    r = sat_mul(r, base);
    if (r == kSaturated) break;
  }
  return r;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) / i stays exact because r * (n-k+i) is divisible by i.
    unsigned __int128 t = static_cast<unsigned __int128>(r) * (n - k + i) / i;
    if (t > kSaturated) return kSaturated;
    r = static_cast<std::uint64_t>(t);
  }
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorCode::CapExceeded, "integer overflow in group product");
  return r;
}

std::int64_t checked_neg(std::int64_t a) {
  if (a == std::numeric_limits<std::int64_t>::min())
    fail(ErrorCode::CapExceeded, "integer overflow in group inverse");
  return -a;
}

std::int64_t abs_checked(std::int64_t a) { return a < 0 ? checked_neg(a) : a; }

// Accepts ASCII '-' and the Unicode minus sign U+2212.
std::int64_t parse_integer(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  } else if (text.starts_with("\xE2\x88\x92")) {
    negative = true;
    text.remove_prefix(3);
  }
  if (text.empty() || text.front() == '-' || text.front() == '+')
    fail(ErrorCode::InvalidInput, "malformed integer");
  std::uint64_t magnitude = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), magnitude);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    fail(ErrorCode::InvalidInput, "malformed integer '" + std::string(text) + "'");
  constexpr auto kMax = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
  if (magnitude > kMax + (negative ? 1 : 0)) fail(ErrorCode::InvalidInput, "integer out of range");
  if (negative) return magnitude == kMax + 1 ? std::numeric_limits<std::int64_t>::min()
                                            : -static_cast<std::int64_t>(magnitude);
  return static_cast<std::int64_t>(magnitude);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

int letter_key(std::int64_t x) { return static_cast<int>(2 * (std::abs(x) - 1) + (x < 0 ? 1 : 0)); }

// Appends b to a, cancelling adjacent inverse pairs.
void free_append(std::vector<std::int64_t>& word, std::span<const std::int64_t> tail) {
  for (std::int64_t x : tail) {
    if (!word.empty() && word.back() == -x)
      word.pop_back();
    else
      word.push_back(x);
  }
}

void enumerate_l1_ball(int dim, std::int64_t r, std::vector<std::int64_t>& prefix,
                       std::vector<Element>& out) {
  if (static_cast<int>(prefix.size()) == dim) {
    out.emplace_back(Family::ZPowD, prefix);
    return;
  }
  for (std::int64_t v = -r; v <= r; ++v) {
    prefix.push_back(v);
    enumerate_l1_ball(dim, r - std::abs(v), prefix, out);
    prefix.pop_back();
  }
}

// All bit vectors that agree with `bits` before `from` and set at most
// `budget` further coordinates.
void enumerate_supports(int m, int from, std::int64_t budget, std::vector<std::int64_t>& bits,
                        std::vector<Element>& out) {
  out.emplace_back(Family::Z2Sum, bits);
  if (budget == 0) return;
  for (int i = from; i < m; ++i) {
    bits[i] = 1;
    enumerate_supports(m, i + 1, budget - 1, bits, out);
    bits[i] = 0;
  }
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "invalid_input";
    case ErrorCode::FamilyMismatch: return "family_mismatch";
    case ErrorCode::CapExceeded: return "cap_exceeded";
    case ErrorCode::Precondition: return "precondition";
  }
  return "unknown";
}

std::string_view to_string(Family family) {
  switch (family) {
    case Family::Z: return "Z";
    case Family::ZPowD: return "Z_POW_D";
    case Family::Z2Sum: return "Z2SUM";
    case Family::Free: return "FREE";
  }
  return "?";
}

std::strong_ordering operator<=>(const Element& a, const Element& b) {
  if (auto c = a.family_ <=> b.family_; c != 0) return c;
  if (a.family_ == Family::Free) {
    if (auto c = a.payload_.size() <=> b.payload_.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.payload_.size(); ++i) {
      if (auto c = letter_key(a.payload_[i]) <=> letter_key(b.payload_[i]); c != 0) return c;
    }
    return std::strong_ordering::equal;
  }
  return std::lexicographical_compare_three_way(a.payload_.begin(), a.payload_.end(),
                                                b.payload_.begin(), b.payload_.end());
}

std::size_t ElementHash::operator()(const Element& e) const noexcept {
  std::uint64_t h = 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint64_t>(e.family());
  for (std::int64_t x : e.payload()) {
    h ^= static_cast<std::uint64_t>(x) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

GroupModel GroupModel::integers() { return GroupModel(Family::Z, 1); }

GroupModel GroupModel::lattice(int dimension) {
  if (dimension < 1 || dimension > 64) fail(ErrorCode::InvalidInput, "lattice dimension must be in 1..64");
  return GroupModel(Family::ZPowD, dimension);
}

GroupModel GroupModel::z2_sum(int coordinates) {
  if (coordinates < 1 || coordinates > 1024)
    fail(ErrorCode::InvalidInput, "z2sum coordinate bound must be in 1..1024");
  return GroupModel(Family::Z2Sum, coordinates);
}

GroupModel GroupModel::free_group(int rank) {
  if (rank < 1 || rank > 26) fail(ErrorCode::InvalidInput, "free group rank must be in 1..26");
  return GroupModel(Family::Free, rank);
}

GroupModel GroupModel::parse(std::string_view spec) {
  spec = trim(spec);
  auto number_after = [&](std::size_t pos) {
    std::int64_t v = parse_integer(spec.substr(pos));
    if (v < 1 || v > 1024) fail(ErrorCode::InvalidInput, "group parameter out of range");
    return static_cast<int>(v);
  };
  if (spec == "z") return integers();
  if (spec.starts_with("z^")) return lattice(number_after(2));
  if (spec.starts_with("z2sum:")) return z2_sum(number_after(6));
  if (spec.starts_with("free:")) return free_group(number_after(5));
  fail(ErrorCode::InvalidInput, "unknown group spec '" + std::string(spec) + "'");
}

std::string GroupModel::spec() const {
  switch (family_) {
    case Family::Z: return "z";
    case Family::ZPowD: return "z^" + std::to_string(param_);
    case Family::Z2Sum: return "z2sum:" + std::to_string(param_);
    case Family::Free: return "free:" + std::to_string(param_);
  }
  return "?";
}

Element GroupModel::identity() const {
  switch (family_) {
    case Family::Z: return Element(family_, {0});
    case Family::ZPowD:
    case Family::Z2Sum: return Element(family_, std::vector<std::int64_t>(param_, 0));
    case Family::Free: return Element(family_, {});
  }
  return {};
}

bool GroupModel::is_member(const Element& e) const noexcept {
  if (e.family() != family_) return false;
  auto p = e.payload();
  switch (family_) {
    case Family::Z: return p.size() == 1;
    case Family::ZPowD: return p.size() == static_cast<std::size_t>(param_);
    case Family::Z2Sum:
      return p.size() == static_cast<std::size_t>(param_) &&
             std::all_of(p.begin(), p.end(), [](std::int64_t b) { return b == 0 || b == 1; });
    case Family::Free:
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0 || std::abs(p[i]) > param_) return false;
        if (i > 0 && p[i] == -p[i - 1]) return false;
      }
      return true;
  }
  return false;
}

void GroupModel::check(const Element& e) const {
  if (!is_member(e))
    fail(ErrorCode::FamilyMismatch, "element does not belong to group " + spec());
}

Element GroupModel::mul(const Element& a, const Element& b) const {
  check(a);
  check(b);
  switch (family_) {
    case Family::Z:
    case Family::ZPowD: {
      std::vector<std::int64_t> r(a.size());
      for (std::size_t i = 0; i < r.size(); ++i) r[i] = checked_add(a[i], b[i]);
      return Element(family_, std::move(r));
    }
    case Family::Z2Sum: {
      std::vector<std::int64_t> r(a.size());
      for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] ^ b[i];
      return Element(family_, std::move(r));
    }
    case Family::Free: {
      std::vector<std::int64_t> r(a.payload().begin(), a.payload().end());
      free_append(r, b.payload());
      return Element(family_, std::move(r));
    }
  }
  return {};
}

Element GroupModel::inv(const Element& a) const {
  check(a);
  switch (family_) {
    case Family::Z:
    case Family::ZPowD: {
      std::vector<std::int64_t> r(a.size());
      for (std::size_t i = 0; i < r.size(); ++i) r[i] = checked_neg(a[i]);
      return Element(family_, std::move(r));
    }
    case Family::Z2Sum: return a;
    case Family::Free: {
      std::vector<std::int64_t> r(a.payload().rbegin(), a.payload().rend());
      for (auto& x : r) x = -x;
      return Element(family_, std::move(r));
    }
  }
  return {};
}

Element GroupModel::parse_element(std::string_view text) const {
  text = trim(text);
  switch (family_) {
    case Family::Z: return Element(family_, {parse_integer(text)});
    case Family::ZPowD: {
      std::vector<std::int64_t> coords;
      std::size_t start = 0;
      while (true) {
        std::size_t comma = text.find(',', start);
        coords.push_back(parse_integer(trim(text.substr(start, comma - start))));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      if (coords.size() != static_cast<std::size_t>(param_))
        fail(ErrorCode::InvalidInput, "expected " + std::to_string(param_) + " coordinates");
      return Element(family_, std::move(coords));
    }
    case Family::Z2Sum: {
      if (text.size() != static_cast<std::size_t>(param_))
        fail(ErrorCode::InvalidInput, "bit string must have length " + std::to_string(param_));
      std::vector<std::int64_t> bits(text.size());
      for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '0' && text[i] != '1')
          fail(ErrorCode::InvalidInput, "bit string may only contain 0 and 1");
        bits[i] = text[i] - '0';
      }
      return Element(family_, std::move(bits));
    }
    case Family::Free: {
      // "e" names the identity while it cannot clash with the fifth letter.
      if (text.empty() || (text == "e" && param_ < 5)) return identity();
      std::vector<std::int64_t> word;
      for (char c : text) {
        std::int64_t letter = 0;
        if (c >= 'a' && c < 'a' + param_)
          letter = c - 'a' + 1;
        else if (c >= 'A' && c < 'A' + param_)
          letter = -(c - 'A' + 1);
        else
          fail(ErrorCode::InvalidInput, std::string("letter '") + c + "' is not a generator of " + spec());
        std::int64_t one[1] = {letter};
        free_append(word, one);
      }
      return Element(family_, std::move(word));
    }
  }
  return {};
}

std::string GroupModel::render(const Element& e) const {
  check(e);
  switch (family_) {
    case Family::Z: return std::to_string(e[0]);
    case Family::ZPowD: {
      std::string s;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(e[i]);
      }
      return s;
    }
    case Family::Z2Sum: {
      std::string s(e.size(), '0');
      for (std::size_t i = 0; i < e.size(); ++i) s[i] = static_cast<char>('0' + e[i]);
      return s;
    }
    case Family::Free: {
      if (e.size() == 0) return param_ < 5 ? "e" : "";
      std::string s;
      for (std::int64_t x : e.payload())
        s += static_cast<char>(x > 0 ? 'a' + (x - 1) : 'A' + (-x - 1));
      return s;
    }
  }
  return {};
}

std::int64_t GroupModel::word_length(const Element& e) const {
  check(e);
  switch (family_) {
    case Family::Z: return abs_checked(e[0]);
    case Family::ZPowD: {
      std::int64_t s = 0;
      for (std::int64_t x : e.payload()) s = checked_add(s, abs_checked(x));
      return s;
    }
    case Family::Z2Sum: return support_size(e);
    case Family::Free: return static_cast<std::int64_t>(e.size());
  }
  return 0;
}

std::vector<Element> GroupModel::generators() const {
  std::vector<Element> gens;
  switch (family_) {
    case Family::Z:
      gens = {Element(family_, {-1}), Element(family_, {1})};
      break;
    case Family::ZPowD:
    case Family::Z2Sum:
      for (int i = 0; i < param_; ++i) {
        for (int sign : {1, -1}) {
          if (family_ == Family::Z2Sum && sign < 0) continue;
          std::vector<std::int64_t> v(param_, 0);
          v[i] = sign;
          gens.emplace_back(family_, std::move(v));
        }
      }
      break;
    case Family::Free:
      for (int i = 1; i <= param_; ++i) {
        gens.emplace_back(family_, std::vector<std::int64_t>{i});
        gens.emplace_back(family_, std::vector<std::int64_t>{-i});
      }
      break;
  }
  std::sort(gens.begin(), gens.end());
  return gens;
}

std::uint64_t GroupModel::word_ball_size(std::int64_t r) const {
  if (r < 0) return 0;
  switch (family_) {
    case Family::Z: return sat_add(sat_mul(2, static_cast<std::uint64_t>(r)), 1);
    case Family::ZPowD: {
      // Points of the L1 ball: sum_i 2^i C(d,i) C(r,i).
      std::uint64_t total = 0;
      for (int i = 0; i <= param_ && i <= r; ++i) {
        std::uint64_t term = sat_mul(sat_pow(2, i), sat_mul(binomial(param_, i), binomial(r, i)));
        total = sat_add(total, term);
      }
      return total;
    }
    case Family::Z2Sum: {
      std::uint64_t total = 0;
      for (std::int64_t j = 0; j <= r && j <= param_; ++j) total = sat_add(total, binomial(param_, j));
      return total;
    }
    case Family::Free: return window_size(Window{r});
  }
  return 0;
}

std::vector<Element> GroupModel::word_ball(std::int64_t r, std::uint64_t cap) const {
  if (r < 0) fail(ErrorCode::InvalidInput, "word radius must be non-negative");
  if (word_ball_size(r) > cap)
    fail(ErrorCode::CapExceeded, "word ball of radius " + std::to_string(r) + " in " + spec() +
                                     " exceeds the element cap");
  std::vector<Element> out;
  switch (family_) {
    case Family::Z:
      for (std::int64_t v = -r; v <= r; ++v) out.emplace_back(family_, std::vector<std::int64_t>{v});
      break;
    case Family::ZPowD: {
      std::vector<std::int64_t> prefix;
      enumerate_l1_ball(param_, r, prefix, out);
      break;
    }
    case Family::Z2Sum: {
      std::vector<std::int64_t> bits(param_, 0);
      enumerate_supports(param_, 0, r, bits, out);
      break;
    }
    case Family::Free: return enumerate_window(Window{r}, cap);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool GroupModel::in_window(const Element& e, const Window& w) const {
  check(e);
  switch (family_) {
    case Family::Z:
    case Family::ZPowD:
      return std::all_of(e.payload().begin(), e.payload().end(), [&](std::int64_t x) {
        return x >= -w.extent && x <= w.extent;
      });
    case Family::Z2Sum:
      for (std::size_t i = static_cast<std::size_t>(std::max<std::int64_t>(w.extent, 0)); i < e.size(); ++i)
        if (e[i] != 0) return false;
      return true;
    case Family::Free: return static_cast<std::int64_t>(e.size()) <= w.extent;
  }
  return false;
}

std::uint64_t GroupModel::window_size(const Window& w) const {
  if (w.extent < 0) return 0;
  const auto n = static_cast<std::uint64_t>(w.extent);
  switch (family_) {
    case Family::Z: return sat_add(sat_mul(2, n), 1);
    case Family::ZPowD: return sat_pow(sat_add(sat_mul(2, n), 1), param_);
    case Family::Z2Sum: return sat_pow(2, std::min<std::int64_t>(w.extent, param_));
    case Family::Free: {
      const std::uint64_t k = static_cast<std::uint64_t>(param_);
      if (k == 1) return sat_add(sat_mul(2, n), 1);
      // 1 + 2k * sum_{i<L} (2k-1)^i
      std::uint64_t total = 1, layer = sat_mul(2, k);
      for (std::uint64_t len = 1; len <= n; ++len) {
        total = sat_add(total, layer);
        if (total == kSaturated) break;
        layer = sat_mul(layer, 2 * k - 1);
      }
      return total;
    }
  }
  return 0;
}

std::vector<Element> GroupModel::enumerate_window(const Window& w, std::uint64_t cap) const {
  if (w.extent < 0) fail(ErrorCode::InvalidInput, "window extent must be non-negative");
  if (family_ == Family::Z2Sum && w.extent > param_)
    fail(ErrorCode::InvalidInput, "z2sum window exceeds the coordinate count");
  const std::uint64_t size = window_size(w);
  if (size > cap)
    fail(ErrorCode::CapExceeded, "window of " + spec() + " has " +
                                     (size == kSaturated ? std::string("too many") : std::to_string(size)) +
                                     " elements, above the cap of " + std::to_string(cap));
  std::vector<Element> out;
  out.reserve(size);
  switch (family_) {
    case Family::Z:
      for (std::int64_t v = -w.extent; v <= w.extent; ++v)
        out.emplace_back(family_, std::vector<std::int64_t>{v});
      break;
    case Family::ZPowD: {
      std::vector<std::int64_t> v(param_, -w.extent);
      while (true) {
        out.emplace_back(family_, v);
        int i = param_ - 1;
        while (i >= 0 && v[i] == w.extent) v[i--] = -w.extent;
        if (i < 0) break;
        ++v[i];
      }
      break;
    }
    case Family::Z2Sum: {
      const auto bits = static_cast<int>(w.extent);
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
        std::vector<std::int64_t> v(param_, 0);
        for (int i = 0; i < bits; ++i) v[i] = (mask >> i) & 1;
        out.emplace_back(family_, std::move(v));
      }
      break;
    }
    case Family::Free: {
      out.push_back(identity());
      std::size_t layer_begin = 0;
      for (std::int64_t len = 1; len <= w.extent; ++len) {
        const std::size_t layer_end = out.size();
        for (std::size_t i = layer_begin; i < layer_end; ++i) {
          for (int letter = -param_; letter <= param_; ++letter) {
            if (letter == 0) continue;
            const Element& base = out[i];
            if (base.size() > 0 && base[base.size() - 1] == -letter) continue;
            std::vector<std::int64_t> word(base.payload().begin(), base.payload().end());
            word.push_back(letter);
            out.emplace_back(family_, std::move(word));
          }
        }
        layer_begin = layer_end;
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Window GroupModel::bounding_window(std::span<const Element> elements) const {
  if (family_ == Family::Z2Sum) return Window{param_};
  std::int64_t extent = 0;
  for (const Element& e : elements) {
    check(e);
    if (family_ == Family::Free) {
      extent = std::max<std::int64_t>(extent, static_cast<std::int64_t>(e.size()));
    } else {
      for (std::int64_t x : e.payload()) extent = std::max(extent, abs_checked(x));
    }
  }
  return Window{extent};
}

Window GroupModel::inner_window(const Window& w) const { return Window{w.extent / 2}; }

std::int64_t support_size(const Element& e) {
  std::int64_t count = 0;
  for (std::int64_t x : e.payload()) count += (x != 0);
  return count;
}

}  // namespace coarse

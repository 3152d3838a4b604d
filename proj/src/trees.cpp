#include "forcelab/trees.hpp"

#include <limits>

#include "forcelab/errors.hpp"

namespace forcelab {

std::uint64_t level_size(std::uint32_t i) {
  if (i > kMaxLevel) {
    throw InputTooLarge("level " + std::to_string(i) + " exceeds the supported maximum of 62");
  }
  return std::uint64_t{1} << i;
}

std::uint32_t ceil_log2(std::uint64_t n) {
  std::uint32_t k = 0;
  while (k < 64 && (std::uint64_t{1} << k) < n) ++k;
  return k;
}

std::uint64_t t_level_count(std::uint32_t n) {
  // sum_{i<n} i = n(n-1)/2
  const std::uint64_t bits = std::uint64_t{n} * (n == 0 ? 0 : n - 1) / 2;
  if (bits >= 64) return std::numeric_limits<std::uint64_t>::max();
  return std::uint64_t{1} << bits;
}

TSeq TSeq::zeros(std::size_t n) {
  TSeq t;
  t.values_.assign(n, 0);
  return t;
}

bool TSeq::is_valid() const {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i > kMaxLevel || values_[i] >= level_size(static_cast<std::uint32_t>(i))) return false;
  }
  return true;
}

TSeq TSeq::prefix(std::size_t n) const {
  TSeq t;
  t.values_.assign(values_.begin(), values_.begin() + std::min(n, values_.size()));
  return t;
}

bool TSeq::is_prefix_of(const TSeq& longer) const {
  return size() <= longer.size() && std::equal(begin(), end(), longer.begin());
}

std::strong_ordering operator<=>(const TSeq& a, const TSeq& b) {
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

BSeq BSeq::parse(std::string_view bits) {
  BSeq b;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw PreconditionError("binary node may only contain '0' and '1': \"" + std::string(bits) + "\"");
    }
    b.bits_.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return b;
}

BSeq BSeq::zeros(std::size_t n) {
  BSeq b;
  b.bits_.assign(n, 0);
  return b;
}

BSeq BSeq::from_rank(std::size_t n, std::uint64_t rank) {
  BSeq b;
  b.bits_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    b.bits_[n - 1 - i] = static_cast<std::uint8_t>((rank >> i) & 1u);
  }
  return b;
}

bool BSeq::is_valid() const {
  return std::all_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b <= 1; });
}

BSeq BSeq::prefix(std::size_t n) const {
  BSeq b;
  b.bits_.assign(bits_.begin(), bits_.begin() + std::min(n, bits_.size()));
  return b;
}

bool BSeq::is_prefix_of(const BSeq& longer) const {
  return size() <= longer.size() && std::equal(begin(), end(), longer.begin());
}

std::uint64_t BSeq::rank() const { return prefix_rank(bits_.size()); }

std::uint64_t BSeq::prefix_rank(std::size_t n) const {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < n; ++i) r = (r << 1) | bits_[i];
  return r;
}

std::string BSeq::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
  return s;
}

std::strong_ordering operator<=>(const BSeq& a, const BSeq& b) {
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

bool next_t_extension(TSeq& seq, std::size_t fixed) {
  for (std::size_t i = seq.size(); i-- > fixed;) {
    if (seq[i] + 1 < level_size(static_cast<std::uint32_t>(i))) {
      ++seq[i];
      return true;
    }
    seq[i] = 0;
  }
  return false;
}

std::vector<TSeq> enumerate_t_level(std::uint32_t n, std::uint64_t budget) {
  const auto count = t_level_count(n);
  if (n > kMaxLevel || count > budget) {
    throw BudgetExceeded("lev_" + std::to_string(n) + " T has more than " + std::to_string(budget) + " elements");
  }
  std::vector<TSeq> out;
  out.reserve(count);
  TSeq t = TSeq::zeros(n);
  do {
    out.push_back(t);
  } while (next_t_extension(t, 0));
  return out;
}

std::vector<BSeq> enumerate_b_level(std::uint32_t n, std::uint64_t budget) {
  if (n > kMaxLevel || level_size(n) > budget) {
    throw BudgetExceeded("lev_" + std::to_string(n) + " B has more than " + std::to_string(budget) + " elements");
  }
  std::vector<BSeq> out;
  out.reserve(level_size(n));
  for (std::uint64_t r = 0; r < level_size(n); ++r) out.push_back(BSeq::from_rank(n, r));
  return out;
}

bool disjoint_above(std::span<const TSeq> family, std::size_t k) {
  if (family.empty()) return true;
  const auto n = family.front().size();
  for (const auto& m : family) {
    if (m.size() != n) throw PreconditionError("disjoint_above: sequences have different lengths");
  }
  if (k > n) throw PreconditionError("disjoint_above: k exceeds the common length");
  boost::container::small_vector<std::uint64_t, 16> column;
  for (std::size_t i = k; i < n; ++i) {
    column.clear();
    for (const auto& m : family) column.push_back(m[i]);
    if (!detail::all_distinct(column)) return false;
  }
  return true;
}

}  // namespace forcelab

#pragma once

// Sparse multinomial count table and its text format.
//
//   m n
//   cell_index count
//   ...
//
// Cell indices are 1-based; cells not listed are zero.  Blank lines and lines
// starting with '#' are ignored.

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "objprior/errors.hpp"

namespace objprior::hier {

class CountTable {
 public:
  CountTable(std::uint64_t m, std::map<std::uint64_t, std::uint64_t> counts) : m_(m) {
    if (m_ < 2) throw DomainError("CountTable: need m >= 2 cells");
    for (const auto& [cell, count] : counts) {
      if (cell < 1 || cell > m_) throw DomainError("CountTable: cell index outside [1, m]");
      if (count == 0) continue;
      counts_.emplace(cell, count);
      n_ += count;
    }
    if (n_ == 0) throw DomainError("CountTable: table has no observations");
    // r_j = #{i : x_i > j}; built from a histogram of the counts in O(n + cells)
    std::vector<std::uint64_t> exceed(static_cast<std::size_t>(n_) + 1, 0);
    for (const auto& [cell, count] : counts_) ++exceed[static_cast<std::size_t>(count)];
    r_profile_.assign(static_cast<std::size_t>(n_), 0);
    std::uint64_t running = 0;
    for (std::size_t j = static_cast<std::size_t>(n_); j-- > 0;) {
      running += exceed[j + 1];
      r_profile_[j] = running;
    }
  }

  /// Dense counts, cell i + 1 <- counts[i].
  static CountTable from_dense(const std::vector<std::uint64_t>& counts) {
    std::map<std::uint64_t, std::uint64_t> sparse;
    for (std::size_t i = 0; i < counts.size(); ++i)
      if (counts[i] > 0) sparse.emplace(i + 1, counts[i]);
    return CountTable(counts.size(), std::move(sparse));
  }

  /// m cells with the given nonzero counts placed in cells 1, 2, ...
  static CountTable with_nonzero(std::uint64_t m, const std::vector<std::uint64_t>& nonzero) {
    std::map<std::uint64_t, std::uint64_t> sparse;
    for (std::size_t i = 0; i < nonzero.size(); ++i) sparse.emplace(i + 1, nonzero[i]);
    return CountTable(m, std::move(sparse));
  }

  std::uint64_t m() const noexcept { return m_; }
  std::uint64_t n() const noexcept { return n_; }
  const std::map<std::uint64_t, std::uint64_t>& counts() const noexcept { return counts_; }
  const std::vector<std::uint64_t>& r_profile() const noexcept { return r_profile_; }
  std::uint64_t r0() const noexcept { return r_profile_.front(); }

  std::uint64_t count(std::uint64_t cell) const {
    const auto it = counts_.find(cell);
    return it == counts_.end() ? 0 : it->second;
  }

 private:
  std::uint64_t m_;
  std::uint64_t n_ = 0;
  std::map<std::uint64_t, std::uint64_t> counts_;
  std::vector<std::uint64_t> r_profile_;
};

inline CountTable parse_count_table(std::istream& in) {
  std::string line;
  bool have_header = false;
  std::uint64_t m = 0, n_declared = 0;
  std::map<std::uint64_t, std::uint64_t> counts;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    long long a = 0, b = 0;
    std::string extra;
    if (!(fields >> a >> b) || (fields >> extra))
      throw ParseError("count table line " + std::to_string(line_no) + ": expected two integers");
    if (a < 0 || b < 0) throw ParseError("count table line " + std::to_string(line_no) + ": negative value");
    if (!have_header) {
      m = static_cast<std::uint64_t>(a);
      n_declared = static_cast<std::uint64_t>(b);
      have_header = true;
      continue;
    }
    const auto cell = static_cast<std::uint64_t>(a);
    if (cell < 1 || cell > m)
      throw ParseError("count table line " + std::to_string(line_no) + ": cell index outside [1, m]");
    if (!counts.emplace(cell, static_cast<std::uint64_t>(b)).second)
      throw ParseError("count table line " + std::to_string(line_no) + ": duplicate cell");
  }
  if (!have_header) throw ParseError("count table: missing 'm n' header");
  std::uint64_t total = 0;
  for (const auto& [cell, c] : counts) total += c;
  if (total != n_declared) throw ParseError("count table: counts sum to " + std::to_string(total) +
                                            " but header declares n=" + std::to_string(n_declared));
  try {
    return CountTable(m, std::move(counts));
  } catch (const DomainError& e) {
    throw ParseError(std::string("count table: ") + e.what());
  }
}

inline CountTable read_count_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open count table '" + path + "'");
  return parse_count_table(in);
}

inline void write_count_table(std::ostream& out, const CountTable& x) {
  out << x.m() << ' ' << x.n() << '\n';
  for (const auto& [cell, count] : x.counts()) out << cell << ' ' << count << '\n';
}

}  // namespace objprior::hier

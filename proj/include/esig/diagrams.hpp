#pragma once

#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

namespace esig {

/// Partial pairing of the positions 1..n. Positions not covered by a pair are
/// "single" (free). A pair {i, i+1} is consecutive, any other pair is an arc;
/// the number of integration variables carried by the pairing is
/// 2 * (#arcs) + (#consecutive pairs).
struct Diagram {
  int n = 0;
  std::vector<std::pair<int, int>> pairs;  // 1-based, first < second, sorted

  Diagram() = default;
  Diagram(int n, std::vector<std::pair<int, int>> pairs);

  std::vector<int> singles() const;
  int num_singles() const { return n - 2 * static_cast<int>(pairs.size()); }
  int num_arcs() const;
  int num_consecutive() const;
  int integration_count() const { return 2 * num_arcs() + num_consecutive(); }

  static bool is_consecutive(const std::pair<int, int>& p) { return p.second == p.first + 1; }

  bool operator==(const Diagram&) const = default;
};

/// Largest n accepted by the enumerator; |pairings of 12 positions| = 10395.
inline constexpr int kMaxDiagramPositions = 12;

/// All pairings of 1..n with exactly m single positions, in a deterministic
/// canonical order (smallest unplaced position is left single first, then
/// paired with each larger position in increasing order). Empty when m > n or
/// n and m have different parity; for m == n the single empty pairing.
std::vector<Diagram> enumerate_pairings(int n, int m);

/// Maximal runs of chained consecutive pairs {k,k+1},{k+2,k+3},...; every
/// consecutive pair lies in exactly one run.
std::vector<std::vector<std::pair<int, int>>> maximal_consecutive_sequences(const Diagram& p);

/// True iff word[i-1] == word[j-1] for every pair {i, j}: with i.i.d.
/// components a pairing contributes to a word only when paired letters match.
bool index_compatible(const Diagram& p, std::span<const int> word);

nlohmann::json to_json(const Diagram& p);
Diagram diagram_from_json(const nlohmann::json& j);

}  // namespace esig

#include "esig/diagrams.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "esig/errors.hpp"

namespace esig {

Diagram::Diagram(int n_in, std::vector<std::pair<int, int>> pairs_in)
    : n(n_in), pairs(std::move(pairs_in)) {
  if (n < 0) throw std::invalid_argument("Diagram: n must be non-negative");
  std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
  for (auto& pr : pairs) {
    if (pr.first > pr.second) std::swap(pr.first, pr.second);
    if (pr.first < 1 || pr.second > n || pr.first == pr.second)
      throw std::invalid_argument("Diagram: pair outside 1..n");
    for (int q : {pr.first, pr.second}) {
      if (used[static_cast<std::size_t>(q)])
        throw std::invalid_argument("Diagram: position " + std::to_string(q) + " paired twice");
      used[static_cast<std::size_t>(q)] = true;
    }
  }
  std::sort(pairs.begin(), pairs.end());
}

std::vector<int> Diagram::singles() const {
  std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
  for (const auto& pr : pairs) {
    used[static_cast<std::size_t>(pr.first)] = true;
    used[static_cast<std::size_t>(pr.second)] = true;
  }
  std::vector<int> out;
  for (int i = 1; i <= n; ++i)
    if (!used[static_cast<std::size_t>(i)]) out.push_back(i);
  return out;
}

int Diagram::num_arcs() const {
  int k = 0;
  for (const auto& pr : pairs)
    if (!is_consecutive(pr)) ++k;
  return k;
}

int Diagram::num_consecutive() const { return static_cast<int>(pairs.size()) - num_arcs(); }

namespace {

void enumerate_rec(int n, int singles_left, std::vector<int>& state,
                   std::vector<std::pair<int, int>>& pairs, std::vector<Diagram>& out) {
  int pos = 0;
  for (int i = 1; i <= n; ++i)
    if (state[static_cast<std::size_t>(i)] == 0) {
      pos = i;
      break;
    }
  if (pos == 0) {
    if (singles_left == 0) out.emplace_back(n, pairs);
    return;
  }
  if (singles_left > 0) {
    state[static_cast<std::size_t>(pos)] = 1;
    enumerate_rec(n, singles_left - 1, state, pairs, out);
    state[static_cast<std::size_t>(pos)] = 0;
  }
  for (int q = pos + 1; q <= n; ++q) {
    if (state[static_cast<std::size_t>(q)] != 0) continue;
    state[static_cast<std::size_t>(pos)] = 2;
    state[static_cast<std::size_t>(q)] = 2;
    pairs.emplace_back(pos, q);
    enumerate_rec(n, singles_left, state, pairs, out);
    pairs.pop_back();
    state[static_cast<std::size_t>(pos)] = 0;
    state[static_cast<std::size_t>(q)] = 0;
  }
}

}  // namespace

std::vector<Diagram> enumerate_pairings(int n, int m) {
  if (n < 0 || m < 0) throw std::invalid_argument("enumerate_pairings: negative argument");
  if (n > kMaxDiagramPositions)
    throw CapabilityError("enumerate_pairings: n = " + std::to_string(n) + " exceeds ceiling " +
                          std::to_string(kMaxDiagramPositions));
  if (m > n || (n - m) % 2 != 0) return {};
  std::vector<Diagram> out;
  std::vector<int> state(static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::pair<int, int>> pairs;
  enumerate_rec(n, m, state, pairs, out);
  return out;
}

std::vector<std::vector<std::pair<int, int>>> maximal_consecutive_sequences(const Diagram& p) {
  std::vector<std::pair<int, int>> consec;
  for (const auto& pr : p.pairs)
    if (Diagram::is_consecutive(pr)) consec.push_back(pr);
  std::sort(consec.begin(), consec.end());
  std::vector<std::vector<std::pair<int, int>>> runs;
  for (const auto& pr : consec) {
    if (!runs.empty() && runs.back().back().first + 2 == pr.first)
      runs.back().push_back(pr);
    else
      runs.push_back({pr});
  }
  return runs;
}

bool index_compatible(const Diagram& p, std::span<const int> word) {
  if (static_cast<int>(word.size()) != p.n)
    throw std::invalid_argument("index_compatible: word length must equal diagram size");
  for (const auto& pr : p.pairs)
    if (word[static_cast<std::size_t>(pr.first - 1)] != word[static_cast<std::size_t>(pr.second - 1)])
      return false;
  return true;
}

nlohmann::json to_json(const Diagram& p) {
  nlohmann::json jp = nlohmann::json::array();
  for (const auto& pr : p.pairs) jp.push_back({pr.first, pr.second});
  return nlohmann::json{{"n", p.n}, {"pairs", jp}};
}

Diagram diagram_from_json(const nlohmann::json& j) {
  std::vector<std::pair<int, int>> pairs;
  for (const auto& jp : j.at("pairs"))
    pairs.emplace_back(jp.at(0).get<int>(), jp.at(1).get<int>());
  return Diagram(j.at("n").get<int>(), std::move(pairs));
}

}  // namespace esig

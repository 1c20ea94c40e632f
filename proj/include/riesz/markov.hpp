/*
 * Copyright 2026 the rieszlogic authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef RIESZ_MARKOV_HPP_
#define RIESZ_MARKOV_HPP_

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "riesz/formula.hpp"
#include "riesz/rational.hpp"

namespace riesz {

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Finite labelled subprobabilistic transition system. Each (label, state)
/// carries a distribution with total mass <= 1; the mass deficit is the
/// halting probability. A label absent from the model acts as the null
/// measure everywhere.
class MarkovProcess {
 public:
  using Distribution = std::vector<std::pair<int, Rational>>;  // sorted by target

  MarkovProcess(std::vector<std::string> states, std::vector<std::string> labels)
      : states_(std::move(states)), labels_(std::move(labels)) {
    if (states_.empty()) throw ModelError("model needs at least one state");
    for (size_t i = 0; i < states_.size(); ++i) {
      if (states_[i].empty()) throw ModelError("empty state name");
      if (!index_.emplace(states_[i], static_cast<int>(i)).second)
        throw ModelError("duplicate state '" + states_[i] + "'");
    }
    for (const auto& l : labels_) {
      if (!valid_label(l)) throw ModelError("invalid label '" + l + "'");
      if (std::count(labels_.begin(), labels_.end(), l) != 1)
        throw ModelError("duplicate label '" + l + "'");
    }
    trans_.assign(labels_.size(),
                  std::vector<Distribution>(states_.size()));
  }

  void set_probability(const std::string& label, const std::string& from,
                       const std::string& to, const Rational& p) {
    int li = label_index(label);
    if (li < 0) throw ModelError("undeclared label '" + label + "'");
    int si = state_index_checked(from), ti = state_index_checked(to);
    if (p < 0 || p > 1)
      throw ModelError("probability " + rat_str(p) + " for (" + label + ", " +
                       from + " -> " + to + ") outside [0,1]");
    auto& dist = trans_[li][si];
    for (auto& e : dist)
      if (e.first == ti)
        throw ModelError("duplicate target '" + to + "' in distribution of (" +
                         label + ", " + from + ")");
    if (p == 0) return;
    dist.emplace_back(ti, p);
  }

  /// Checks row sums and normalizes internal ordering. Must run (and pass)
  /// before the process is used; from_json/load call it.
  void finalize() {
    for (size_t li = 0; li < labels_.size(); ++li)
      for (size_t si = 0; si < states_.size(); ++si) {
        auto& dist = trans_[li][si];
        std::sort(dist.begin(), dist.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        Rational sum = 0;
        for (const auto& e : dist) sum += e.second;
        if (sum > 1)
          throw ModelError("row sum " + rat_str(sum) + " > 1 for (" +
                           labels_[li] + ", " + states_[si] + "), excess " +
                           rat_str(Rational(sum - 1)));
      }
  }

  const std::vector<std::string>& states() const { return states_; }
  const std::vector<std::string>& labels() const { return labels_; }
  int state_count() const { return static_cast<int>(states_.size()); }

  int state_index(const std::string& s) const {
    auto it = index_.find(s);
    return it == index_.end() ? -1 : it->second;
  }
  int state_index_checked(const std::string& s) const {
    int i = state_index(s);
    if (i < 0) throw ModelError("unknown state '" + s + "'");
    return i;
  }
  int label_index(const std::string& l) const {
    auto it = std::find(labels_.begin(), labels_.end(), l);
    return it == labels_.end() ? -1 : static_cast<int>(it - labels_.begin());
  }

  /// Distribution of (label, state); the empty distribution doubles as the
  /// null measure for labels the model does not carry.
  const Distribution& distribution(const std::string& label, int state) const {
    static const Distribution kNull;
    int li = label_index(label);
    if (li < 0) return kNull;
    return trans_[li][state];
  }
  const Distribution& distribution(int label, int state) const {
    return trans_[label][state];
  }

  Rational row_sum(int label, int state) const {
    Rational s = 0;
    for (const auto& e : trans_[label][state]) s += e.second;
    return s;
  }

  /// Total mass given by `state` under `label` into the set `targets`
  /// (targets given as a characteristic vector).
  Rational mass_into(int label, int state, const std::vector<char>& targets) const {
    Rational s = 0;
    for (const auto& e : trans_[label][state])
      if (targets[e.first]) s += e.second;
    return s;
  }

  static MarkovProcess from_json(const nlohmann::json& j);
  static MarkovProcess load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelError("cannot open '" + path + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ModelError("invalid JSON in '" + path + "': " + e.what());
    }
    return from_json(j);
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["states"] = states_;
    j["labels"] = labels_;
    nlohmann::json trans = nlohmann::json::object();
    for (size_t li = 0; li < labels_.size(); ++li) {
      nlohmann::json rows = nlohmann::json::object();
      for (size_t si = 0; si < states_.size(); ++si) {
        if (trans_[li][si].empty()) continue;
        nlohmann::json row = nlohmann::json::object();
        for (const auto& e : trans_[li][si])
          row[states_[e.first]] = rat_str(e.second);
        rows[states_[si]] = row;
      }
      trans[labels_[li]] = rows;
    }
    j["transitions"] = trans;
    return j;
  }

 private:
  std::vector<std::string> states_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<Distribution>> trans_;  // [label][state]
};

inline MarkovProcess MarkovProcess::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("states") || !j.contains("labels"))
    throw ModelError("model JSON needs \"states\" and \"labels\" arrays");
  std::vector<std::string> states, labels;
  for (const auto& s : j.at("states")) {
    if (!s.is_string()) throw ModelError("state names must be strings");
    states.push_back(s.get<std::string>());
  }
  for (const auto& l : j.at("labels")) {
    if (!l.is_string()) throw ModelError("labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  MarkovProcess m(std::move(states), std::move(labels));
  if (j.contains("transitions")) {
    const auto& trans = j.at("transitions");
    if (!trans.is_object()) throw ModelError("\"transitions\" must be an object");
    for (auto it = trans.begin(); it != trans.end(); ++it) {
      if (m.label_index(it.key()) < 0)
        throw ModelError("transitions mention undeclared label '" + it.key() +
                         "'");
      if (!it.value().is_object())
        throw ModelError("transitions for label '" + it.key() +
                         "' must be an object");
      for (auto st = it.value().begin(); st != it.value().end(); ++st) {
        if (!st.value().is_object())
          throw ModelError("distribution of (" + it.key() + ", " + st.key() +
                           ") must be an object");
        for (auto tg = st.value().begin(); tg != st.value().end(); ++tg) {
          if (!tg.value().is_string())
            throw ModelError("probabilities must be exact strings like \"1/3\"");
          auto p = parse_rational(tg.value().get<std::string>());
          if (!p)
            throw ModelError("malformed probability '" +
                             tg.value().get<std::string>() + "' for (" +
                             it.key() + ", " + st.key() + ")");
          m.set_probability(it.key(), st.key(), tg.key(), *p);
        }
      }
    }
  }
  m.finalize();
  return m;
}

/// Disjoint nonempty blocks covering every state of a fixed process.
struct Partition {
  std::vector<std::vector<int>> blocks;

  static Partition discrete(int n) {
    Partition p;
    for (int i = 0; i < n; ++i) p.blocks.push_back({i});
    return p;
  }
  static Partition trivial(int n) {
    Partition p;
    p.blocks.emplace_back();
    for (int i = 0; i < n; ++i) p.blocks.back().push_back(i);
    return p;
  }

  int block_count() const { return static_cast<int>(blocks.size()); }

  /// state -> block id; throws unless the blocks partition 0..n-1.
  std::vector<int> block_of(int n) const {
    std::vector<int> of(n, -1);
    for (size_t b = 0; b < blocks.size(); ++b) {
      if (blocks[b].empty()) throw ModelError("partition has an empty block");
      for (int s : blocks[b]) {
        if (s < 0 || s >= n) throw ModelError("partition mentions unknown state");
        if (of[s] != -1) throw ModelError("partition blocks overlap");
        of[s] = static_cast<int>(b);
      }
    }
    for (int s = 0; s < n; ++s)
      if (of[s] == -1) throw ModelError("partition misses a state");
    return of;
  }

  /// Canonical form: members ascending inside blocks, blocks ordered by
  /// their least member.
  void normalize() {
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
  }

  bool operator==(const Partition& other) const { return blocks == other.blocks; }
};

struct QuotientResult {
  MarkovProcess process;
  std::vector<int> projection;  // original state -> quotient state index
};

/// Quotient by a bisimulation partition. Blocks become states named after
/// their least member; the projection is a coalgebra morphism, which is
/// verified exactly (mass from any member into each block must match the
/// quotient transition). A non-bisimulation partition is rejected with a
/// witness.
inline QuotientResult quotient(const MarkovProcess& m, Partition p) {
  p.normalize();
  std::vector<int> of = p.block_of(m.state_count());
  int nb = p.block_count();

  std::vector<std::string> qstates;
  for (const auto& b : p.blocks) qstates.push_back(m.states()[b.front()]);
  MarkovProcess q(qstates, m.labels());

  // Characteristic vectors per block.
  std::vector<std::vector<char>> in_block(nb, std::vector<char>(m.state_count(), 0));
  for (int s = 0; s < m.state_count(); ++s) in_block[of[s]][s] = 1;

  for (size_t li = 0; li < m.labels().size(); ++li) {
    for (int b = 0; b < nb; ++b) {
      int rep = p.blocks[b].front();
      std::vector<Rational> block_mass(nb);
      for (int c = 0; c < nb; ++c)
        block_mass[c] =
            m.mass_into(static_cast<int>(li), rep, in_block[c]);
      // Every member must agree with the representative; otherwise the
      // partition is not stable under this label.
      for (int s : p.blocks[b]) {
        for (int c = 0; c < nb; ++c) {
          Rational got = m.mass_into(static_cast<int>(li), s, in_block[c]);
          if (got != block_mass[c])
            throw ModelError(
                "partition is not a bisimulation: states '" + m.states()[rep] +
                "' and '" + m.states()[s] + "' give mass " +
                rat_str(block_mass[c]) + " vs " + rat_str(got) +
                " to block of '" + m.states()[p.blocks[c].front()] +
                "' under label '" + m.labels()[li] + "'");
        }
      }
      for (int c = 0; c < nb; ++c)
        if (block_mass[c] != 0)
          q.set_probability(m.labels()[li], qstates[b], qstates[c],
                            block_mass[c]);
    }
  }
  q.finalize();
  return QuotientResult{std::move(q), std::move(of)};
}

}  // namespace riesz

#endif  // RIESZ_MARKOV_HPP_

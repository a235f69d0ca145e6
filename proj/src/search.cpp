// Copyright 2026 The ospcheck Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "ospcheck/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <map>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

namespace osp {

namespace {

constexpr int kMaxValuationsPerPlayer = 16;
constexpr int kMaxRectangleBits = 20;
// Forward checking keeps one label bitset per pending profile; past this
// many labels it is switched off.
constexpr std::int64_t kMaxForwardLabels = std::int64_t{1} << 16;

using Clock = std::chrono::steady_clock;

std::int64_t Lcm(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

// A leaf label: allocation index and one grid index per player.
struct Label {
  int alloc = 0;
  std::vector<std::uint8_t> pay;
  int gid = 0;  // alloc and payments packed into one index
};

using Bits = std::vector<std::uint64_t>;

struct RootOption {
  bool leaf = false;
  int label = 0;  // index into the root rectangle's labels
  PlayerId speaker = -1;
  std::vector<std::uint32_t> blocks;
};

enum class Mode {
  kStream,    // no filters at all
  kShapes,    // one dummy label per leaf
  kPruned,    // per-leaf filters and leaf-pair pruning
  kUnpruned,  // per-leaf filters, full checkers on complete mechanisms
};

struct OptionResult {
  SearchStats stats;
  std::optional<MechanismBundle> found;
  bool exhausted = false;
};

class Engine {
 public:
  Engine(const SearchSpace& space, Mode mode, Rational target)
      : space_(space), mode_(mode), target_(target) {
    const Domain& d = space.domain;
    n_ = d.player_count();
    sizes_ = d.Sizes();
    depth_cap_ = space.EffectiveDepth();
    if (mode_ == Mode::kShapes) {
      allocs_.push_back(Allocation::Empty(d.setting));
    } else {
      allocs_ = AllAllocations(d.setting);
    }
    offsets_.assign(n_, 0);
    int bits = 0;
    for (int i = 0; i < n_; ++i) {
      offsets_[i] = bits;
      bits += sizes_[i];
    }
    if (bits > kMaxRectangleBits) {
      throw Error("search domain too large: " + std::to_string(bits) +
                  " valuations in total (limit " +
                  std::to_string(kMaxRectangleBits) + ")");
    }
    labels_.resize(std::size_t{1} << bits);
    have_labels_.assign(std::size_t{1} << bits, 0);
    Scale();
    SetUpForwardChecking();
  }

  void set_deadline(std::optional<Clock::time_point> t) { deadline_ = t; }
  void set_stop_at_first(bool b) { stop_at_first_ = b; }
  void set_visitor(std::function<bool(const MechanismBundle&)> v) {
    visitor_ = std::move(v);
  }
  void set_survivor_hook(std::function<void(const MechanismBundle&)> h) {
    survivor_hook_ = std::move(h);
  }

  std::vector<RootOption> RootOptions() {
    std::vector<std::uint32_t> full(n_);
    for (int i = 0; i < n_; ++i) full[i] = (1u << sizes_[i]) - 1u;
    root_masks_ = full;
    std::vector<RootOption> out;
    const auto& labels = LabelsFor(full);
    for (int k = 0; k < static_cast<int>(labels.size()); ++k) {
      RootOption o;
      o.leaf = true;
      o.label = k;
      out.push_back(std::move(o));
    }
    if (depth_cap_ > 0) {
      for (PlayerId i = 0; i < n_; ++i) {
        if (std::popcount(full[i]) < 2) continue;
        for (const auto& blocks : Partitions(full[i])) {
          RootOption o;
          o.speaker = i;
          o.blocks = blocks;
          out.push_back(std::move(o));
        }
      }
    }
    return out;
  }

  OptionResult RunOption(const RootOption& o) {
    result_ = OptionResult{};
    stop_ = false;
    nodes_.clear();
    leaves_.clear();
    todo_.clear();
    Pending root{root_masks_, 0, -1, -1, {}, {}};
    if (fc_) {
      for (int pid = 0; pid < profile_count_; ++pid) {
        root.points.push_back(pid);
        root.viable.push_back(point_bits_[pid]);
      }
    }
    if (o.leaf) {
      const Label& l = LabelsFor(root_masks_)[o.label];
      leaves_.push_back({-1, -1, root_masks_, &l});
      Dfs();
      leaves_.pop_back();
    } else {
      Expand(root, o.speaker, o.blocks);
    }
    return std::move(result_);
  }

 private:
  struct Pending {
    std::vector<std::uint32_t> masks;
    int depth = 0;
    int parent = -1;
    int child = -1;
    // Forward checking: the profiles inside `masks` and, per profile, the
    // labels still compatible with every leaf placed so far.
    std::vector<int> points;
    std::vector<Bits> viable;
  };
  struct NodeRec {
    PlayerId speaker = -1;
    int parent = -1;
    int child = -1;
    std::vector<std::uint32_t> blocks;
  };
  struct LeafRec {
    int parent = -1;
    int child = -1;
    std::vector<std::uint32_t> masks;
    const Label* label = nullptr;
  };

  // Values and grid scaled to integers by a common denominator.
  void Scale() {
    const Domain& d = space_.domain;
    std::int64_t den = 1;
    for (const Rational& g : space_.grid) den = Lcm(den, g.denominator());
    for (int i = 0; i < n_; ++i) {
      for (const Valuation& v : d.players[i]) {
        for (const Allocation& a : allocs_) {
          den = Lcm(den, v.Evaluate(a[i]).denominator());
        }
      }
    }
    auto scaled = [den](const Rational& r) {
      return r.numerator() * (den / r.denominator());
    };
    grid_.clear();
    for (const Rational& g : space_.grid) grid_.push_back(scaled(g));
    value_.assign(n_, {});
    for (int i = 0; i < n_; ++i) {
      for (const Valuation& v : d.players[i]) {
        std::vector<std::int64_t> row;
        for (const Allocation& a : allocs_) row.push_back(scaled(v.Evaluate(a[i])));
        value_[i].push_back(std::move(row));
      }
    }
  }

  void SetUpForwardChecking() {
    grid_size_ = static_cast<int>(grid_.size());
    fc_ = false;
    if (mode_ != Mode::kPruned) return;
    std::int64_t total = static_cast<std::int64_t>(allocs_.size());
    for (int i = 0; i < n_ && total <= kMaxForwardLabels; ++i) total *= grid_size_;
    if (total > kMaxForwardLabels) return;
    fc_ = true;
    label_count_ = static_cast<int>(total);
    words_ = (label_count_ + 63) / 64;
    util_.assign(n_, {});
    for (int i = 0; i < n_; ++i) {
      for (int a = 0; a < sizes_[i]; ++a) {
        std::vector<std::int64_t> row(label_count_);
        for (int gid = 0; gid < label_count_; ++gid) {
          int rest = gid;
          int pay = 0;
          for (int j = n_ - 1; j >= 0; --j) {
            if (j == i) pay = rest % grid_size_;
            rest /= grid_size_;
          }
          row[gid] = value_[i][a][rest] - grid_[pay];
        }
        util_[i].push_back(std::move(row));
      }
    }
    profile_count_ = 1;
    for (int i = 0; i < n_; ++i) profile_count_ *= sizes_[i];
    point_bits_.assign(profile_count_, Bits(words_, 0));
    for (int pid = 0; pid < profile_count_; ++pid) {
      std::vector<std::uint32_t> masks(n_);
      int rest = pid;
      for (int i = n_ - 1; i >= 0; --i) {
        masks[i] = 1u << (rest % sizes_[i]);
        rest /= sizes_[i];
      }
      for (const Label& l : LabelsFor(masks)) {
        point_bits_[pid][l.gid / 64] |= std::uint64_t{1} << (l.gid % 64);
      }
    }
    mask_ready_.assign(n_ * kMaxValuationsPerPlayer, 0);
    masks_.assign(n_, std::vector<Bits>());
    for (int i = 0; i < n_; ++i) masks_[i].assign(sizes_[i], Bits(words_));
  }

  int Coordinate(int pid, PlayerId i) const {
    for (int j = n_ - 1; j > i; --j) pid /= sizes_[j];
    return pid % sizes_[i];
  }

  bool InMasks(int pid, const std::vector<std::uint32_t>& masks) const {
    for (int i = n_ - 1; i >= 0; --i) {
      if (!(masks[i] >> (pid % sizes_[i]) & 1u)) return false;
      pid /= sizes_[i];
    }
    return true;
  }

  std::size_t RectKey(const std::vector<std::uint32_t>& masks) const {
    std::size_t key = 0;
    for (int i = 0; i < n_; ++i) key |= std::size_t{masks[i]} << offsets_[i];
    return key;
  }

  static std::vector<int> Members(std::uint32_t mask) {
    std::vector<int> out;
    for (int a = 0; mask != 0; ++a, mask >>= 1) {
      if (mask & 1u) out.push_back(a);
    }
    return out;
  }

  // Labels allowed at a leaf with this rectangle of consistent valuations.
  const std::vector<Label>& LabelsFor(const std::vector<std::uint32_t>& masks) {
    const std::size_t key = RectKey(masks);
    if (have_labels_[key]) return labels_[key];
    std::vector<Label>& out = labels_[key];
    have_labels_[key] = 1;
    const bool filtered = mode_ == Mode::kPruned || mode_ == Mode::kUnpruned;
    if (mode_ == Mode::kShapes) {
      out.push_back({0, std::vector<std::uint8_t>(n_, 0)});
      return out;
    }
    std::vector<std::vector<int>> members(n_);
    for (int i = 0; i < n_; ++i) members[i] = Members(masks[i]);
    for (int x = 0; x < static_cast<int>(allocs_.size()); ++x) {
      if (filtered && !RatioOk(members, x)) continue;
      // Grid indices per player allowed by IR and NNT.
      std::vector<std::vector<std::uint8_t>> options(n_);
      for (int i = 0; i < n_; ++i) {
        std::int64_t cap = 0;
        bool first = true;
        for (int a : members[i]) {
          cap = first ? value_[i][a][x] : std::min(cap, value_[i][a][x]);
          first = false;
        }
        for (int g = 0; g < static_cast<int>(grid_.size()); ++g) {
          if (!filtered || (grid_[g] >= 0 && grid_[g] <= cap)) {
            options[i].push_back(static_cast<std::uint8_t>(g));
          }
        }
      }
      std::vector<std::uint8_t> pick(n_, 0);
      std::vector<std::size_t> at(n_, 0);
      bool any = std::all_of(options.begin(), options.end(),
                             [](const auto& o) { return !o.empty(); });
      while (any) {
        for (int i = 0; i < n_; ++i) pick[i] = options[i][at[i]];
        int gid = x;
        for (int j = 0; j < n_; ++j) gid = gid * grid_size_ + pick[j];
        out.push_back({x, pick, gid});
        int i = n_ - 1;
        while (i >= 0 && ++at[i] == options[i].size()) at[i--] = 0;
        if (i < 0) break;
      }
    }
    return out;
  }

  // OPT < target * SW on every profile of the rectangle (0/0 allowed).
  bool RatioOk(const std::vector<std::vector<int>>& members, int x) {
    const std::int64_t tn = target_.numerator(), td = target_.denominator();
    std::vector<std::size_t> at(n_, 0);
    while (true) {
      std::int64_t sw = 0;
      std::vector<int> profile(n_);
      for (int i = 0; i < n_; ++i) {
        profile[i] = members[i][at[i]];
        sw += value_[i][profile[i]][x];
      }
      std::int64_t opt = Opt(profile);
      if (sw == 0 ? opt != 0 : !(td * opt < tn * sw)) return false;
      int i = n_ - 1;
      while (i >= 0 && ++at[i] == members[i].size()) at[i--] = 0;
      if (i < 0) return true;
    }
  }

  std::int64_t Opt(const std::vector<int>& profile) {
    std::uint64_t key = 0;
    for (int i = 0; i < n_; ++i) key = key * kMaxValuationsPerPlayer + profile[i];
    auto it = opt_cache_.find(key);
    if (it != opt_cache_.end()) return it->second;
    std::int64_t best = 0;
    for (std::size_t x = 0; x < allocs_.size(); ++x) {
      std::int64_t w = 0;
      for (int i = 0; i < n_; ++i) w += value_[i][profile[i]][x];
      best = std::max(best, w);
    }
    opt_cache_.emplace(key, best);
    return best;
  }

  // Unordered set partitions of `mask` into at least two blocks, blocks
  // ordered by their smallest element.
  const std::vector<std::vector<std::uint32_t>>& Partitions(std::uint32_t mask) {
    auto it = partitions_.find(mask);
    if (it != partitions_.end()) return it->second;
    std::vector<int> elems = Members(mask);
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> blocks;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == elems.size()) {
        if (blocks.size() >= 2) out.push_back(blocks);
        return;
      }
      const std::uint32_t bit = 1u << elems[k];
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        blocks[b] |= bit;
        rec(k + 1);
        blocks[b] &= ~bit;
      }
      blocks.push_back(bit);
      rec(k + 1);
      blocks.pop_back();
    };
    rec(0);
    return partitions_.emplace(mask, std::move(out)).first->second;
  }

  bool TimeUp() {
    if (!deadline_) return false;
    if ((++ticks_ & 0xfff) != 0) return false;
    if (Clock::now() >= *deadline_) {
      result_.exhausted = true;
      stop_ = true;
    }
    return stop_;
  }

  // Path of (node, child) pairs from the root to the slot (parent, child).
  void PathOf(int node, int child, std::vector<std::pair<int, int>>& out) const {
    out.clear();
    while (node >= 0) {
      out.emplace_back(node, child);
      child = nodes_[node].child;
      node = nodes_[node].parent;
    }
    std::reverse(out.begin(), out.end());
  }

  std::int64_t UtilityAt(const LeafRec& l, PlayerId i, int a) const {
    return value_[i][a][l.label->alloc] - grid_[l.label->pay[i]];
  }

  // The speaker at the two leaves' lowest common ancestor must weakly
  // prefer its own leaf for every valuation consistent with it.
  bool PairOk(const LeafRec& a, const LeafRec& b) {
    PathOf(a.parent, a.child, path_a_);
    PathOf(b.parent, b.child, path_b_);
    const PlayerId i = LcaSpeaker();
    for (std::uint32_t m = a.masks[i]; m != 0; m &= m - 1) {
      int v = std::countr_zero(m);
      if (UtilityAt(a, i, v) < UtilityAt(b, i, v)) return false;
    }
    for (std::uint32_t m = b.masks[i]; m != 0; m &= m - 1) {
      int v = std::countr_zero(m);
      if (UtilityAt(b, i, v) < UtilityAt(a, i, v)) return false;
    }
    return true;
  }

  // Speaker at the node where path_a_ and path_b_ part.
  PlayerId LcaSpeaker() const {
    std::size_t k = 0;
    while (path_a_[k].second == path_b_[k].second) ++k;
    return nodes_[path_a_[k].first].speaker;
  }

  // Narrows the labels of every pending subtree against a newly placed
  // leaf: any later leaf must keep the speaker at their common ancestor
  // from preferring the other side. Checked per profile with that profile's
  // valuation, which is a necessary condition for the whole leaf. Saves the
  // old sets in `undo`. False when some profile has no label left.
  bool ForwardCheck(const LeafRec& leaf, std::vector<std::vector<Bits>>& undo) {
    undo.clear();
    PathOf(leaf.parent, leaf.child, path_a_);
    const int lam = leaf.label->gid;
    for (int i = 0; i < n_; ++i) {
      for (int a = 0; a < sizes_[i]; ++a) mask_ready_[i * kMaxValuationsPerPlayer + a] = 0;
    }
    bool ok = true;
    std::size_t q = 0;
    for (; q < todo_.size() && ok; ++q) {
      Pending& pend = todo_[q];
      undo.push_back(pend.viable);
      PathOf(pend.parent, pend.child, path_b_);
      const PlayerId i = LcaSpeaker();
      for (std::size_t k = 0; k < pend.points.size(); ++k) {
        const int a = Coordinate(pend.points[k], i);
        const Bits& m = MaskFor(i, a, lam, leaf.masks[i]);
        bool any = false;
        Bits& v = pend.viable[k];
        for (int w = 0; w < words_; ++w) {
          v[w] &= m[w];
          any = any || v[w] != 0;
        }
        if (!any) {
          ok = false;
          break;
        }
      }
    }
    return ok;
  }

  void Restore(const std::vector<std::vector<Bits>>& undo) {
    for (std::size_t q = 0; q < undo.size(); ++q) todo_[q].viable = undo[q];
  }

  // Labels l with u_a(l) >= u_a(lam) and u_b(lam) >= u_b(l) for every b in
  // `own` (the placed leaf's consistent set for player i).
  const Bits& MaskFor(PlayerId i, int a, int lam, std::uint32_t own) {
    char& ready = mask_ready_[i * kMaxValuationsPerPlayer + a];
    Bits& m = masks_[i][a];
    if (ready) return m;
    ready = 1;
    std::fill(m.begin(), m.end(), 0);
    const auto& ua = util_[i][a];
    for (int l = 0; l < label_count_; ++l) {
      if (ua[l] < ua[lam]) continue;
      bool good = true;
      for (std::uint32_t r = own; r != 0 && good; r &= r - 1) {
        const auto& ub = util_[i][std::countr_zero(r)];
        good = ub[lam] >= ub[l];
      }
      if (good) m[l / 64] |= std::uint64_t{1} << (l % 64);
    }
    return m;
  }

  void Expand(const Pending& p, PlayerId speaker,
              const std::vector<std::uint32_t>& blocks) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back({speaker, p.parent, p.child, blocks});
    // Children go on the stack last-first so the first block is next.
    for (int c = static_cast<int>(blocks.size()) - 1; c >= 0; --c) {
      Pending q{p.masks, p.depth + 1, id, c, {}, {}};
      q.masks[speaker] = blocks[c];
      for (std::size_t k = 0; k < p.points.size(); ++k) {
        if (blocks[c] >> Coordinate(p.points[k], speaker) & 1u) {
          q.points.push_back(p.points[k]);
          q.viable.push_back(p.viable[k]);
        }
      }
      todo_.push_back(std::move(q));
    }
    Dfs();
    todo_.resize(todo_.size() - blocks.size());
    nodes_.pop_back();
  }

  void Dfs() {
    if (stop_ || TimeUp()) return;
    if (todo_.empty()) {
      Complete();
      return;
    }
    Pending p = std::move(todo_.back());
    todo_.pop_back();
    const std::vector<Label>& labels = LabelsFor(p.masks);
    Bits allowed;
    if (fc_) {
      allowed.assign(words_, ~std::uint64_t{0});
      for (const Bits& v : p.viable) {
        for (int w = 0; w < words_; ++w) allowed[w] &= v[w];
      }
    }
    std::vector<std::vector<Bits>> undo;
    for (const Label& l : labels) {
      if (fc_ && !(allowed[l.gid / 64] >> (l.gid % 64) & 1u)) {
        ++result_.stats.pruned;
        continue;
      }
      LeafRec leaf{p.parent, p.child, p.masks, &l};
      if (mode_ == Mode::kPruned) {
        bool ok = true;
        for (const LeafRec& other : leaves_) {
          if (!PairOk(leaf, other)) {
            ok = false;
            break;
          }
        }
        if (!ok) {
          ++result_.stats.pruned;
          continue;
        }
      }
      if (fc_ && !ForwardCheck(leaf, undo)) {
        Restore(undo);
        ++result_.stats.pruned;
        continue;
      }
      leaves_.push_back(std::move(leaf));
      Dfs();
      leaves_.pop_back();
      if (fc_) Restore(undo);
      if (stop_) break;
    }
    if (!stop_ && p.depth < depth_cap_) {
      for (PlayerId i = 0; i < n_ && !stop_; ++i) {
        if (std::popcount(p.masks[i]) < 2) continue;
        for (const auto& blocks : Partitions(p.masks[i])) {
          Expand(p, i, blocks);
          if (stop_) break;
        }
      }
    }
    todo_.push_back(std::move(p));
  }

  MechanismBundle Materialize() const {
    const Domain& d = space_.domain;
    TreeBuilder b(d.setting);
    std::vector<NodeId> node_ids(nodes_.size());
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
      node_ids[k] = b.AddInternal(nodes_[k].speaker);
    }
    auto block_label = [](std::uint32_t mask) {
      std::string s;
      for (int a : Members(mask)) {
        if (!s.empty()) s += ",";
        s += std::to_string(a);
      }
      return s;
    };
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
      const NodeRec& r = nodes_[k];
      if (r.parent >= 0) {
        b.AddEdge(node_ids[r.parent],
                  block_label(nodes_[r.parent].blocks[r.child]), node_ids[k]);
      }
    }
    NodeId root = nodes_.empty() ? kNoNode : node_ids[0];
    for (const LeafRec& l : leaves_) {
      std::vector<Rational> pay;
      for (int i = 0; i < n_; ++i) pay.push_back(space_.grid[l.label->pay[i]]);
      NodeId id = b.AddLeaf(allocs_[l.label->alloc], std::move(pay));
      if (l.parent >= 0) {
        b.AddEdge(node_ids[l.parent],
                  block_label(nodes_[l.parent].blocks[l.child]), id);
      } else {
        root = id;
      }
    }
    MechanismTree tree = b.Build(root);
    std::vector<StrategyTable> strategies(n_);
    for (PlayerId i = 0; i < n_; ++i) {
      for (int a = 0; a < sizes_[i]; ++a) {
        Behavior beh(tree, i);
        for (NodeId u : tree.NodesOf(i)) {
          auto edges = tree.edges(u);
          for (std::size_t e = 0; e < edges.size(); ++e) {
            for (int x : ParseBlock(edges[e].label)) {
              if (x == a) beh.SetIndex(u, static_cast<int>(e));
            }
          }
        }
        strategies[i].push_back(std::move(beh));
      }
    }
    return MechanismBundle{std::move(tree), std::move(strategies), d};
  }

  static std::vector<int> ParseBlock(const std::string& label) {
    std::vector<int> out;
    std::size_t start = 0;
    while (start <= label.size()) {
      std::size_t end = label.find(',', start);
      if (end == std::string::npos) end = label.size();
      out.push_back(std::stoi(label.substr(start, end - start)));
      start = end + 1;
    }
    return out;
  }

  bool FullCheck(const MechanismBundle& m) const {
    if (!CheckOsp(m.tree, m.strategies, m.domain).pass) return false;
    if (!CheckIr(m.tree, m.strategies, m.domain).pass) return false;
    if (!CheckNnt(m.tree, m.strategies, m.domain).pass) return false;
    RatioReport r = WelfareRatio(m.tree, m.strategies, m.domain);
    return !r.unbounded && r.ratio < target_;
  }

  void Complete() {
    if (mode_ == Mode::kShapes) {
      ++result_.stats.examined;
      return;
    }
    if (mode_ == Mode::kStream) {
      ++result_.stats.examined;
      if (visitor_ && !visitor_(Materialize())) stop_ = true;
      return;
    }
    ++result_.stats.examined;
    MechanismBundle m = Materialize();
    bool pass = FullCheck(m);
    if (mode_ == Mode::kPruned && !pass) {
      throw std::logic_error("search survivor failed re-verification");
    }
    if (!pass) return;
    ++result_.stats.survivors;
    if (survivor_hook_) survivor_hook_(m);
    if (!result_.found) result_.found = std::move(m);
    if (stop_at_first_) stop_ = true;
  }

  const SearchSpace& space_;
  Mode mode_;
  Rational target_;
  int n_ = 0;
  std::vector<int> sizes_;
  int depth_cap_ = 0;
  std::vector<Allocation> allocs_;
  std::vector<int> offsets_;
  std::vector<std::int64_t> grid_;
  std::vector<std::vector<std::vector<std::int64_t>>> value_;  // [i][a][alloc]
  std::vector<std::vector<Label>> labels_;
  std::vector<char> have_labels_;
  std::map<std::uint64_t, std::int64_t> opt_cache_;
  std::map<std::uint32_t, std::vector<std::vector<std::uint32_t>>> partitions_;
  std::vector<std::uint32_t> root_masks_;
  int grid_size_ = 1;

  bool fc_ = false;
  int label_count_ = 0;
  int words_ = 0;
  int profile_count_ = 0;
  std::vector<std::vector<std::vector<std::int64_t>>> util_;  // [i][a][gid]
  std::vector<Bits> point_bits_;
  std::vector<std::vector<Bits>> masks_;
  std::vector<char> mask_ready_;

  std::vector<NodeRec> nodes_;
  std::vector<LeafRec> leaves_;
  std::vector<Pending> todo_;
  std::vector<std::pair<int, int>> path_a_, path_b_;

  OptionResult result_;
  bool stop_ = false;
  bool stop_at_first_ = true;
  std::uint64_t ticks_ = 0;
  std::optional<Clock::time_point> deadline_;
  std::function<bool(const MechanismBundle&)> visitor_;
  std::function<void(const MechanismBundle&)> survivor_hook_;
};

int WorkerCount(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("OSPCHECK_WORKERS")) {
    int w = std::atoi(env);
    if (w > 0) return w;
  }
  return 1;
}

}  // namespace

void SearchSpace::Validate() const {
  domain.Validate();
  if (grid.empty()) throw Error("payment grid is empty");
  if (grid.size() > 255) throw Error("payment grid has more than 255 values");
  for (const auto& p : domain.players) {
    if (static_cast<int>(p.size()) > kMaxValuationsPerPlayer) {
      throw Error("search supports at most " +
                  std::to_string(kMaxValuationsPerPlayer) +
                  " valuations per player");
    }
  }
}

int SearchSpace::EffectiveDepth() const {
  if (max_depth >= 0) return max_depth;
  int total = 0;
  for (const auto& p : domain.players) total += static_cast<int>(p.size());
  return total;
}

std::vector<Rational> DefaultPaymentGrid(AdversarialFamily family,
                                         const AuctionSetting& setting) {
  const std::int64_t k = AdversarialScale(setting);
  std::set<Rational> grid;
  for (int x = 0; x <= 5; ++x) grid.insert(Rational(x));
  if (family == AdversarialFamily::kMuSingleMinded ||
      family == AdversarialFamily::kCaSingleMinded) {
    for (std::int64_t x : {k * k, k * k + 1, k * k * k * k}) grid.insert(Rational(x));
  } else {
    for (std::int64_t x : {2 * k * k, 2 * k * k + 2, 2 * k * k * k + k * k}) {
      grid.insert(Rational(x));
    }
  }
  return {grid.begin(), grid.end()};
}

std::string ToString(SearchOutcome outcome) {
  switch (outcome) {
    case SearchOutcome::kNoCounterexample: return "no-counterexample";
    case SearchOutcome::kCounterexample: return "counterexample";
    case SearchOutcome::kBudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

SearchVerdict FalsifyImpossibility(const SearchSpace& space,
                                   const Rational& target,
                                   const SearchOptions& options) {
  if (target <= 1) throw Error("target ratio must exceed 1");
  space.Validate();
  const auto start = Clock::now();
  std::optional<Clock::time_point> deadline;
  if (options.budget_seconds > 0) {
    deadline = start + std::chrono::duration_cast<Clock::duration>(
                           std::chrono::duration<double>(options.budget_seconds));
  }
  const Mode mode = options.pruning ? Mode::kPruned : Mode::kUnpruned;
  const int workers = options.on_survivor ? 1 : WorkerCount(options.workers);

  Engine probe(space, mode, target);
  const std::vector<RootOption> roots = probe.RootOptions();
  std::vector<OptionResult> results(roots.size());
  std::vector<char> done(roots.size(), 0);
  // Lowest root option holding a survivor, when stopping at the first one.
  std::atomic<std::size_t> first_hit{roots.size()};
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto work = [&] {
    try {
      Engine engine(space, mode, target);
      engine.RootOptions();
      engine.set_deadline(deadline);
      engine.set_stop_at_first(options.stop_at_first);
      if (options.on_survivor) engine.set_survivor_hook(options.on_survivor);
      for (std::size_t k = next++; k < roots.size(); k = next++) {
        if (options.stop_at_first && k > first_hit.load()) continue;
        results[k] = engine.RunOption(roots[k]);
        done[k] = 1;
        if (results[k].exhausted) break;
        if (options.stop_at_first && results[k].found) {
          std::size_t cur = first_hit.load();
          while (k < cur && !first_hit.compare_exchange_weak(cur, k)) {
          }
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mu);
      if (!failure) failure = std::current_exception();
      next = roots.size();
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  SearchVerdict v;
  v.target = target;
  v.pruning = options.pruning;
  v.workers = workers;
  bool exhausted = false;
  for (std::size_t k = 0; k < roots.size(); ++k) {
    if (!done[k]) {
      // Skipped after an earlier hit, or left over when time ran out.
      if (!(options.stop_at_first && k > first_hit.load())) exhausted = true;
      continue;
    }
    if (options.stop_at_first && k > first_hit.load()) continue;
    const OptionResult& r = results[k];
    v.stats.examined += r.stats.examined;
    v.stats.pruned += r.stats.pruned;
    v.stats.survivors += r.stats.survivors;
    exhausted = exhausted || r.exhausted;
    if (r.found && !v.counterexample) v.counterexample = r.found;
  }
  if (v.counterexample) {
    v.outcome = SearchOutcome::kCounterexample;
    const MechanismBundle& m = *v.counterexample;
    v.counterexample_ratio = WelfareRatio(m.tree, m.strategies, m.domain);
  } else if (exhausted) {
    v.outcome = SearchOutcome::kBudgetExhausted;
  }
  v.elapsed_seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  std::string grid;
  for (const Rational& g : space.grid) {
    grid += (grid.empty() ? "" : ", ") + ToString(g);
  }
  v.class_description =
      "normalized mechanisms (each message is a block of a partition of the "
      "speaker's consistent valuations; block-membership strategies), depth <= " +
      std::to_string(space.EffectiveDepth()) + ", payments in {" + grid + "}";
  v.caveat =
      "finite payment grid: a verdict covers only the class above; no "
      "discretization result shows the grid is complete";
  return v;
}

void EnumerateNormalizedMechanisms(
    const SearchSpace& space,
    const std::function<bool(const MechanismBundle&)>& visit) {
  space.Validate();
  Engine engine(space, Mode::kStream, Rational(2));
  bool keep = true;
  engine.set_visitor([&](const MechanismBundle& m) {
    keep = visit(m);
    return keep;
  });
  for (const RootOption& o : engine.RootOptions()) {
    engine.RunOption(o);
    if (!keep) break;
  }
}

std::uint64_t CountTreeShapes(const std::vector<int>& sizes, int max_depth) {
  AuctionSetting s{AuctionKind::kMultiUnit, static_cast<int>(sizes.size()), 1};
  Domain d{s, {}};
  for (int size : sizes) {
    std::vector<Valuation> vals;
    for (int a = 0; a < size; ++a) {
      vals.push_back(Valuation::SingleMindedMu(1, Rational(a), 1));
    }
    d.players.push_back(std::move(vals));
  }
  SearchSpace space{d, {Rational(0)}, max_depth};
  space.Validate();
  Engine engine(space, Mode::kShapes, Rational(2));
  std::uint64_t total = 0;
  for (const RootOption& o : engine.RootOptions()) {
    total += engine.RunOption(o).stats.examined;
  }
  return total;
}

Valuation HatValuation(const AuctionSetting& setting) {
  const std::int64_t k = AdversarialScale(setting);
  return Valuation::SingleMindedMu(setting.items, Rational(k * k),
                                   setting.items, "hat");
}

Domain AddHatValuations(const Domain& fixture) {
  if (fixture.setting.kind != AuctionKind::kMultiUnit) {
    throw Error("hat valuation needs a multi-unit setting");
  }
  Domain d = fixture;
  for (int i = 0; i < std::min(2, d.player_count()); ++i) {
    d.players[i].push_back(HatValuation(d.setting));
  }
  d.Validate();
  return d;
}

Domain PaymentBoundWitnessDomain(const AuctionSetting& setting) {
  Domain full = AdversarialDomain(setting, AdversarialFamily::kMuSingleMinded);
  Domain d{setting, {}};
  for (int i = 0; i < setting.players; ++i) {
    const auto& p = full.players[i];
    if (i == 0) {
      d.players.push_back({p[fixture_index::kOne], p[fixture_index::kAll],
                           HatValuation(setting)});
    } else {
      d.players.push_back({p[fixture_index::kOne]});
    }
  }
  d.Validate();
  return d;
}

PaymentBoundReport AuditPaymentBounds(const MechanismBundle& bundle) {
  PaymentBoundReport out;
  const Domain& d = bundle.domain;
  const int n = d.player_count();
  auto find = [&](int i, const std::string& name) {
    for (int a = 0; a < static_cast<int>(d.players[i].size()); ++a) {
      if (d.players[i][a].name() == name) return a;
    }
    return -1;
  };
  std::vector<int> ones(n);
  for (int i = 0; i < n; ++i) {
    ones[i] = find(i, "one");
    if (ones[i] < 0) {
      out.detail = "player " + std::to_string(i) + " has no \"one\" valuation";
      return out;
    }
  }
  auto leaf_of = [&](const std::vector<int>& profile) {
    return Run(bundle.tree, ProfileBehaviors(bundle.strategies, profile)).leaf;
  };
  const MechanismTree& t = bundle.tree;
  NodeId leaf = leaf_of(ones);
  ++out.profiles_checked;
  for (int i = 0; i < n; ++i) {
    if (!t.allocation(leaf)[i].empty() && t.payments(leaf)[i] > 1) {
      out.pass = false;
      out.detail += "all-one profile: player " + std::to_string(i) + " pays " +
                    ToString(t.payments(leaf)[i]) + " > 1; ";
    }
  }
  const std::int64_t k = AdversarialScale(d.setting);
  const Bundle all = Bundle::All(d.setting);
  for (int i = 0; i < n; ++i) {
    const int a = find(i, "all");
    if (a < 0) continue;
    std::vector<int> profile = ones;
    profile[i] = a;
    NodeId l = leaf_of(profile);
    ++out.profiles_checked;
    if (t.allocation(l)[i] == all && t.payments(l)[i] > k * k) {
      out.pass = false;
      out.detail += "player " + std::to_string(i) + " wins everything for " +
                    ToString(t.payments(l)[i]) + " > k^2; ";
    }
  }
  if (out.pass) out.detail = "bounds hold";
  return out;
}

}  // namespace osp

#include "qlogic/poset.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "qlogic/errors.hpp"
#include "qlogic/matrix.hpp"

namespace qlogic {

int ContextPoset::restrict_atom(int c, int d, int i) const {
  if (!leq(d, c)) throw NotComparable("restriction requires a coarser target context");
  return restr_.at(static_cast<size_t>(c)).at(static_cast<size_t>(d)).at(static_cast<size_t>(i));
}

std::vector<int> ContextPoset::down_set(int c) const {
  std::vector<int> out;
  for (int d = 0; d < size(); ++d)
    if (leq(d, c)) out.push_back(d);
  return out;
}

std::vector<int> ContextPoset::up_set(int c) const {
  std::vector<int> out;
  for (int e = 0; e < size(); ++e)
    if (leq(c, e)) out.push_back(e);
  return out;
}

std::vector<int> ContextPoset::maximal() const {
  std::vector<int> out;
  for (int c = 0; c < size(); ++c) {
    bool top = true;
    for (int e = 0; e < size(); ++e)
      if (e != c && leq(c, e)) { top = false; break; }
    if (top) out.push_back(c);
  }
  return out;
}

int ContextPoset::find(const Context& c) const {
  for (int i = 0; i < size(); ++i)
    if (context_equal(contexts[static_cast<size_t>(i)], c)) return i;
  return -1;
}

int ContextPoset::find_label(const std::string& l) const {
  for (int i = 0; i < size(); ++i)
    if (contexts[static_cast<size_t>(i)].label == l) return i;
  return -1;
}

bool ContextPoset::is_down_closed() const {
  for (int c = 0; c < size(); ++c) {
    const Context& ctx = contexts[static_cast<size_t>(c)];
    int k = ctx.natoms();
    if (k <= 1) continue;
    if (k == 2 && !bottom_included) continue;
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        std::vector<std::vector<int>> blocks;
        blocks.push_back({i, j});
        for (int t = 0; t < k; ++t)
          if (t != i && t != j) blocks.push_back({t});
        Context merged = coarsen(ctx, blocks, "");
        if (find(merged) < 0) return false;
      }
    }
  }
  return true;
}

Context coarsen(const Context& c, const std::vector<std::vector<int>>& blocks,
                std::string label) {
  std::vector<bool> seen(static_cast<size_t>(c.natoms()), false);
  std::vector<Mat> atoms;
  for (const auto& block : blocks) {
    if (block.empty()) throw BadInput("empty block in coarsening");
    Mat q = zeros(c.dim());
    for (int i : block) {
      if (i < 0 || i >= c.natoms() || seen[static_cast<size_t>(i)])
        throw BadInput("coarsening blocks must partition the atom indices");
      seen[static_cast<size_t>(i)] = true;
      q += c.atoms[static_cast<size_t>(i)];
    }
    atoms.push_back(q);
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw BadInput("coarsening blocks must cover every atom");
  return make_context(std::move(atoms), std::move(label));
}

std::vector<std::vector<std::vector<int>>> set_partitions(int k) {
  std::vector<std::vector<std::vector<int>>> out;
  if (k <= 0) return out;
  // Restricted growth strings: rgs[0] = 0, rgs[i] <= 1 + max(rgs[0..i-1]).
  std::vector<int> rgs(static_cast<size_t>(k), 0);
  while (true) {
    int nblocks = 1 + *std::max_element(rgs.begin(), rgs.end());
    std::vector<std::vector<int>> blocks(static_cast<size_t>(nblocks));
    for (int i = 0; i < k; ++i) blocks[static_cast<size_t>(rgs[static_cast<size_t>(i)])].push_back(i);
    out.push_back(std::move(blocks));
    int i = k - 1;
    for (; i > 0; --i) {
      int mx = 0;
      for (int j = 0; j < i; ++j) mx = std::max(mx, rgs[static_cast<size_t>(j)]);
      if (rgs[static_cast<size_t>(i)] <= mx) break;
    }
    if (i == 0) return out;
    ++rgs[static_cast<size_t>(i)];
    for (int j = i + 1; j < k; ++j) rgs[static_cast<size_t>(j)] = 0;
  }
}

namespace {

std::string block_label(const std::string& base, const std::vector<std::vector<int>>& blocks) {
  std::string s = base + ":";
  for (size_t b = 0; b < blocks.size(); ++b) {
    if (b) s += "|";
    for (size_t j = 0; j < blocks[b].size(); ++j) {
      if (j && blocks[b][j - 1] >= 9) s += ",";
      s += std::to_string(blocks[b][j]);
    }
  }
  return s;
}

}  // namespace

ContextPoset build_poset(std::vector<Context> generators, bool down_close,
                         bool include_bottom, int cap) {
  if (generators.empty()) throw BadInput("poset needs at least one generator context");
  int n = generators[0].dim();
  for (const auto& g : generators)
    if (g.dim() != n) throw BadInput("poset generators must share one algebra dimension");
  if (cap < 1) throw BadInput("poset cap must be positive");

  std::vector<Context> members;
  auto add = [&](Context c) {
    for (const auto& m : members)
      if (context_equal(m, c)) return;  // first occurrence keeps its label
    if (static_cast<int>(members.size()) >= cap)
      throw PosetTooLarge("context poset exceeds cap of " + std::to_string(cap));
    members.push_back(std::move(c));
  };

  for (auto& g : generators) add(std::move(g));
  Context bottom = bottom_context(n);
  if (include_bottom) add(bottom);  // before closure, so it keeps its own label
  size_t ngen = members.size();

  if (down_close) {
    // Coarsenings of coarsenings are coarsenings, so closing each generator
    // once suffices.
    for (size_t gi = 0; gi < ngen; ++gi) {
      Context base = members[gi];  // copy: `add` may reallocate
      for (const auto& blocks : set_partitions(base.natoms())) {
        if (static_cast<int>(blocks.size()) == base.natoms()) continue;  // base itself
        add(coarsen(base, blocks, block_label(base.label, blocks)));
      }
    }
  }

  if (!include_bottom) {
    members.erase(std::remove_if(members.begin(), members.end(),
                                 [&](const Context& c) { return context_equal(c, bottom); }),
                  members.end());
    if (members.empty()) throw BadInput("poset is empty once the bottom context is excluded");
  }

  std::sort(members.begin(), members.end(), context_before);

  ContextPoset p;
  p.contexts = std::move(members);
  p.bottom_included = include_bottom;
  p.down_closed_mode = down_close;

  int sz = p.size();
  p.leq_.assign(static_cast<size_t>(sz), std::vector<bool>(static_cast<size_t>(sz), false));
  p.restr_.assign(static_cast<size_t>(sz), {});
  for (int c = 0; c < sz; ++c) p.restr_[static_cast<size_t>(c)].resize(static_cast<size_t>(sz));
  for (int c = 0; c < sz; ++c) {
    for (int d = 0; d < sz; ++d) {
      if (!context_leq(p.at(d), p.at(c))) continue;
      p.leq_[static_cast<size_t>(c)][static_cast<size_t>(d)] = true;
      auto& table = p.restr_[static_cast<size_t>(c)][static_cast<size_t>(d)];
      table.resize(static_cast<size_t>(p.at(c).natoms()));
      for (int i = 0; i < p.at(c).natoms(); ++i) {
        SpectrumPoint lam{p.at(c), i};
        table[static_cast<size_t>(i)] = restrict_point(lam, p.at(d)).atom_index;
      }
    }
  }
  return p;
}

ContextPoset down_closure(const ContextPoset& p, int cap) {
  return build_poset(p.contexts, true, p.bottom_included, cap);
}

bool sieve_valid(const ContextPoset& p, const Sieve& s) {
  std::set<int> in(s.members.begin(), s.members.end());
  for (int m : s.members) {
    if (m < 0 || m >= p.size()) return false;
    for (int o = 0; o < p.size(); ++o) {
      bool below = (s.direction == Direction::down) ? p.leq(o, m) : p.leq(m, o);
      if (below && !in.count(o)) return false;
    }
  }
  return true;
}

Sieve close_sieve(const ContextPoset& p, std::vector<int> seed, Direction dir) {
  std::set<int> in;
  for (int m : seed) {
    if (m < 0 || m >= p.size()) throw BadInput("sieve seed index out of range");
    for (int o = 0; o < p.size(); ++o) {
      bool below = (dir == Direction::down) ? p.leq(o, m) : p.leq(m, o);
      if (below) in.insert(o);
    }
  }
  Sieve s;
  s.members.assign(in.begin(), in.end());
  s.direction = dir;
  return s;
}

}  // namespace qlogic

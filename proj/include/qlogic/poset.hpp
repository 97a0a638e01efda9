#ifndef QLOGIC_POSET_HPP
#define QLOGIC_POSET_HPP

#include <string>
#include <vector>

#include "qlogic/context.hpp"

namespace qlogic {

// A finite poset of contexts under the refinement order, with the order and
// the restriction maps cached. Immutable after construction; all later
// structure (subobjects, sieves, valuations) is indexed by positions in
// `contexts`, which are kept in canonical order.
struct ContextPoset {
  std::vector<Context> contexts;
  bool bottom_included = true;
  bool down_closed_mode = false;  // built by down-closing its generators

  int size() const { return static_cast<int>(contexts.size()); }
  const Context& at(int i) const { return contexts.at(static_cast<size_t>(i)); }

  // d <= c in the refinement order (d the coarser one). Reflexive.
  bool leq(int d, int c) const { return leq_.at(static_cast<size_t>(c)).at(static_cast<size_t>(d)); }

  // Atom index of the restriction of point (c, atom i) to context d <= c.
  int restrict_atom(int c, int d, int i) const;

  std::vector<int> down_set(int c) const;  // all d <= c, canonical order
  std::vector<int> up_set(int c) const;    // all e >= c, canonical order
  std::vector<int> maximal() const;

  int find(const Context& c) const;             // -1 when absent
  int find_label(const std::string& l) const;   // -1 when absent

  // Every pair-merge coarsening of every member is present (the bottom is
  // exempt when bottom_included is off). Pair-merges generate all
  // coarsenings, so this decides down-closedness.
  bool is_down_closed() const;

  // Filled by build_poset.
  std::vector<std::vector<bool>> leq_;                 // leq_[c][d]: d <= c
  std::vector<std::vector<std::vector<int>>> restr_;   // restr_[c][d][i], d <= c
};

// Deduplicates the generators, optionally adds every coarsening of every
// generator (one context per partition of its atom set, blockwise sums as
// atoms), optionally drops the bottom, sorts canonically and caches order
// and restrictions. Throws PosetTooLarge when the closure exceeds cap.
ContextPoset build_poset(std::vector<Context> generators, bool down_close,
                         bool include_bottom, int cap = 5000);

// The coarsening of c given by merging atoms blockwise. Blocks index into
// c's canonical atom order.
Context coarsen(const Context& c, const std::vector<std::vector<int>>& blocks,
                std::string label);

// All partitions of {0..k-1}; each partition lists its blocks sorted by
// smallest element. Bell(k) many.
std::vector<std::vector<std::vector<int>>> set_partitions(int k);

// Down-closure as a poset operation; idempotent.
ContextPoset down_closure(const ContextPoset& p, int cap = 5000);

enum class Direction { down, up };

// A down-closed (or up-closed) set of poset members: the truth values of the
// two models.
struct Sieve {
  std::vector<int> members;  // sorted positions in the poset
  Direction direction = Direction::down;
};

bool sieve_valid(const ContextPoset& p, const Sieve& s);

// Smallest sieve of the given direction containing the seed.
Sieve close_sieve(const ContextPoset& p, std::vector<int> seed, Direction dir);

}  // namespace qlogic

#endif

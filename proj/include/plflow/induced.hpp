#pragma once

#include <map>
#include <string>
#include <vector>

#include "plflow/clopen.hpp"

namespace plflow {

// first return map phi_C on points of C
inline SymbolicPoint first_return_map(const ClopenSet& c, const SymbolicPoint& x,
                                      long budget = 64) {
  if (!c.contains(x)) throw validation_error("first_return_map: point not in the set");
  for (long n = 1; n <= budget; ++n) {
    SymbolicPoint y = x.shifted(n);
    if (c.contains(y)) return y;
  }
  throw budget_error("point does not return within budget");
}

struct ReturnWord {
  char letter;          // induced-alphabet symbol
  std::string word;     // the word read in the base system between visits
  ClopenSet cell;       // points of C starting this return word (first-return constrained)
};

class InducedSubshift;

// Subshift over the return-word alphabet of (S, C), with the exact language
// oracle: a block is allowed iff the corresponding intersection of shifted
// first-return cells is nonempty.
class InducedSubshift : public Subshift {
 public:
  static std::shared_ptr<const InducedSubshift> build(const ClopenSet& c, long budget = 64) {
    auto parts = return_partition(c, ReturnMode::FirstReturn, budget);
    // split time-level cells by the actual word read until the return
    std::map<std::string, ClopenSet> by_word;
    for (const auto& rc : parts) {
      long wlo = std::min<long>(rc.cell.window_empty() ? 0 : rc.cell.lo(), 0);
      long whi = std::max<long>(rc.cell.window_empty() ? rc.time - 1 : rc.cell.hi(), rc.time - 1);
      std::map<std::string, std::vector<std::string>> groups;
      for (const auto& u : rc.cell.expanded_words(wlo, whi)) {
        std::string rw = u.substr(static_cast<size_t>(-wlo), static_cast<size_t>(rc.time));
        groups[rw].push_back(u);
      }
      for (auto& [rw, us] : groups) {
        ClopenSet cell = ClopenSet::from_words(c.shift(), wlo, std::move(us));
        auto it = by_word.find(rw);
        if (it == by_word.end())
          by_word.emplace(rw, cell);
        else
          it->second = unite(it->second, cell);
      }
    }
    static const std::string pool =
        "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
    if (by_word.size() > pool.size())
      throw budget_error("too many return words for the symbol pool");
    std::vector<ReturnWord> rws;
    std::string alphabet;
    size_t i = 0;
    for (auto& [rw, cell] : by_word) {
      rws.push_back({pool[i], rw, cell});
      alphabet += pool[i];
      ++i;
    }
    auto s = std::shared_ptr<InducedSubshift>(
        new InducedSubshift(std::move(alphabet), c.shift()->word_budget()));
    s->base_ = c.shift();
    s->transversal_ = c;
    s->return_words_ = std::move(rws);
    return s;
  }

  const SubshiftPtr& base() const { return base_; }
  const ClopenSet& transversal() const { return transversal_; }
  const std::vector<ReturnWord>& return_words() const { return return_words_; }

  const ReturnWord& by_letter(char l) const {
    for (const auto& r : return_words_)
      if (r.letter == l) return r;
    throw validation_error(std::string("unknown induced symbol: ") + l);
  }

  // itinerary coding of a point of C; exact for eventually periodic points
  SymbolicPoint encode(const SymbolicPoint& x, long budget = 64) const {
    if (!transversal_.contains(x)) throw validation_error("encode: point not in the transversal");
    auto letter_at = [&](const SymbolicPoint& v) -> std::pair<char, long> {
      for (const auto& r : return_words_)
        if (r.cell.contains(v)) return {r.letter, static_cast<long>(r.word.size())};
      throw validation_error("encode: no return cell matches");
    };
    // forward letters xi_0 xi_1 ... until the visit point revisits an earlier one
    std::vector<SymbolicPoint> seen{x};
    std::string fwd;
    size_t cyc_from = 0;
    bool cyc_found = false;
    SymbolicPoint cur = x;
    while (static_cast<long>(fwd.size()) <= budget && !cyc_found) {
      auto [l, n] = letter_at(cur);
      fwd += l;
      cur = cur.shifted(n);
      for (size_t j = 0; j < seen.size() && !cyc_found; ++j)
        if (points_equal(seen[j], cur)) {
          cyc_from = j;
          cyc_found = true;
        }
      if (!cyc_found) seen.push_back(cur);
    }
    if (!cyc_found) throw budget_error("encode: no forward itinerary cycle within budget");
    std::string center0 = fwd.substr(0, cyc_from);
    std::string rperiod = fwd.substr(cyc_from);
    // backward letters xi_{-1} xi_{-2} ... until a previous visit point repeats
    std::vector<SymbolicPoint> bseen{x};
    std::string bwd;
    cur = x;
    while (static_cast<long>(bwd.size()) <= budget) {
      bool ok = false;
      for (long n = 1; n <= budget && !ok; ++n) {
        SymbolicPoint cand = cur.shifted(-n);
        if (transversal_.contains(cand)) {
          cur = cand;
          ok = true;
        }
      }
      if (!ok) throw budget_error("encode: no backward visit within budget");
      bwd += letter_at(cur).first;
      for (size_t m = 0; m < bseen.size(); ++m) {
        if (!points_equal(bseen[m], cur)) continue;
        // letters xi_{-m-1}..xi_{-s} repeat; xi_{-m}..xi_{-1} are pre-period
        std::string lperiod = bwd.substr(m);
        std::reverse(lperiod.begin(), lperiod.end());
        std::string lextra = bwd.substr(0, m);
        std::reverse(lextra.begin(), lextra.end());
        return SymbolicPoint::eventually_periodic(shared_from_this(), lperiod,
                                                  lextra + center0, rperiod,
                                                  static_cast<long long>(lextra.size()));
      }
      bseen.push_back(cur);
    }
    throw budget_error("encode: no backward itinerary cycle within budget");
  }

 protected:
  std::vector<std::string> induced_words(size_t n) const override {
    std::vector<std::string> out;
    std::string prefix;
    recurse(n, prefix, "", out);
    return out;
  }

  // w allowed iff some point of C reads w along its visits.  The visit
  // positions pin the base word completely; cell constraints overhang the
  // pinned block by at most a bounded amount on each side, so we enumerate
  // only those free letters.
  bool induced_allowed(const std::string& w) const override {
    std::string concat;
    std::vector<long> starts;
    for (char l : w) {
      starts.push_back(static_cast<long>(concat.size()));
      concat += by_letter(l).word;
    }
    return pinned_block_extends(w, concat, starts);
  }

 private:
  InducedSubshift(std::string alphabet, size_t budget)
      : Subshift(SubshiftKind::Induced, std::move(alphabet), budget) {}

  // overhang of cell windows beyond [0, time)
  std::pair<long, long> overhangs() const {
    long left = 0, right = 0;
    for (const auto& r : return_words_) {
      if (r.cell.window_empty()) continue;
      left = std::max(left, -r.cell.lo());
      right = std::max(right, r.cell.hi() - (static_cast<long>(r.word.size()) - 1));
    }
    return {left, right};
  }

  bool pinned_block_extends(const std::string& w, const std::string& concat,
                            const std::vector<long>& starts) const {
    auto [padl, padr] = overhangs();
    const std::string& alpha = base_->alphabet();
    std::string left(static_cast<size_t>(padl), alpha[0]);
    std::string right(static_cast<size_t>(padr), alpha[0]);
    std::vector<size_t> li(static_cast<size_t>(padl), 0), ri(static_cast<size_t>(padr), 0);
    auto bump = [&](std::vector<size_t>& idx, std::string& s) {
      size_t p = idx.size();
      while (p > 0 && ++idx[p - 1] == alpha.size()) idx[--p] = 0;
      for (size_t i = 0; i < idx.size(); ++i) s[i] = alpha[idx[i]];
      return p != 0;
    };
    do {
      do {
        std::string u = left + concat + right;
        if (!base_->allowed(u)) continue;
        bool ok = true;
        for (size_t j = 0; j < w.size() && ok; ++j) {
          const ReturnWord& r = by_letter(w[j]);
          if (r.cell.window_empty()) continue;  // whole space
          long lo = starts[j] + r.cell.lo() + padl;
          size_t len = static_cast<size_t>(r.cell.hi() - r.cell.lo() + 1);
          const auto& cw = r.cell.words();
          if (!std::binary_search(cw.begin(), cw.end(),
                                  u.substr(static_cast<size_t>(lo), len)))
            ok = false;
        }
        if (ok) return true;
      } while (padr > 0 && bump(ri, right));
    } while (padl > 0 && bump(li, left));
    return false;
  }

  void recurse(size_t n, std::string& prefix, std::string concat,
               std::vector<std::string>& out) const {
    if (prefix.size() == n) {
      if (induced_allowed(prefix)) {
        out.push_back(prefix);
        if (out.size() > word_budget()) throw budget_error("induced language exceeds budget");
      }
      return;
    }
    for (const auto& r : return_words_) {
      std::string next = concat + r.word;
      if (!base_->allowed(next)) continue;  // prefix pruning
      prefix += r.letter;
      recurse(n, prefix, next, out);
      prefix.pop_back();
    }
  }

  SubshiftPtr base_;
  ClopenSet transversal_;
  std::vector<ReturnWord> return_words_;
};

inline std::shared_ptr<const InducedSubshift> induced_system(const ClopenSet& c,
                                                             long budget = 64) {
  return InducedSubshift::build(c, budget);
}

}  // namespace plflow

#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "plflow/subshift.hpp"
#include "plflow/sympoint.hpp"

namespace plflow {

// Finite union of cylinders over a coordinate window, in canonical form:
// words intersected with the language, window shrunk (left first, then right)
// while the word set is saturated in the dropped coordinate.  The whole space
// and the empty set live on the empty window, so equality is syntactic.
class ClopenSet {
 public:
  ClopenSet() = default;

  static ClopenSet whole(SubshiftPtr s) {
    ClopenSet c;
    c.shift_ = std::move(s);
    c.words_ = {""};
    return c;
  }

  static ClopenSet none(SubshiftPtr s) {
    ClopenSet c;
    c.shift_ = std::move(s);
    return c;
  }

  static ClopenSet cylinder(SubshiftPtr s, long pos, char letter) {
    return from_words(std::move(s), pos, {std::string(1, letter)});
  }

  // cylinder of a word anchored so that word[0] sits at coordinate `lo`
  static ClopenSet from_words(SubshiftPtr s, long lo, std::vector<std::string> words) {
    ClopenSet c;
    c.shift_ = std::move(s);
    if (words.empty()) return c;
    size_t len = words[0].size();
    for (const auto& w : words)
      if (w.size() != len || len == 0)
        throw validation_error("clopen words must share a nonzero length");
    c.lo_ = lo;
    c.hi_ = lo + static_cast<long>(len) - 1;
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    c.words_ = std::move(words);
    c.canonicalize();
    return c;
  }

  const SubshiftPtr& shift() const { return shift_; }
  bool is_empty() const { return words_.empty(); }
  bool is_whole() const { return words_.size() == 1 && words_[0].empty(); }
  bool window_empty() const { return hi_ < lo_; }
  long lo() const { return lo_; }
  long hi() const { return hi_; }
  const std::vector<std::string>& words() const { return words_; }

  // the words of this set re-expressed over [wlo, whi] (a superset window)
  std::vector<std::string> expanded_words(long wlo, long whi) const {
    if (whi < wlo) throw validation_error("bad expansion window");
    const auto& lang = shift_->words(static_cast<size_t>(whi - wlo + 1));
    if (is_empty()) return {};
    if (is_whole()) return lang;
    if (wlo > lo_ || whi < hi_) throw validation_error("expansion window must contain the set window");
    std::set<std::string> have(words_.begin(), words_.end());
    std::vector<std::string> out;
    size_t off = static_cast<size_t>(lo_ - wlo), len = static_cast<size_t>(hi_ - lo_ + 1);
    for (const auto& w : lang)
      if (have.count(w.substr(off, len))) out.push_back(w);
    return out;
  }

  // phi^n(C): window translated by -n
  ClopenSet shifted(long n) const {
    ClopenSet c = *this;
    if (!c.window_empty()) {
      c.lo_ -= n;
      c.hi_ -= n;
    }
    return c;
  }

  bool contains(const SymbolicPoint& x) const {
    if (x.shift() != shift_) throw mismatch_error("point from a different subshift");
    if (is_empty()) return false;
    if (is_whole()) return true;
    return std::binary_search(words_.begin(), words_.end(), x.window(lo_, hi_));
  }

  // membership of the cylinder [w at wlo]: true iff that cylinder meets us is
  // not what we want -- this tests containment of the cylinder's window word
  bool contains_window_word(const std::string& w, long wlo) const {
    if (is_empty()) return false;
    if (is_whole()) return true;
    if (wlo > lo_ || wlo + static_cast<long>(w.size()) - 1 < hi_)
      throw validation_error("window word does not cover the set window");
    return std::binary_search(words_.begin(), words_.end(),
                              w.substr(static_cast<size_t>(lo_ - wlo),
                                       static_cast<size_t>(hi_ - lo_ + 1)));
  }

  friend ClopenSet unite(const ClopenSet& a, const ClopenSet& b) {
    return a.binary_op(b, [](bool x, bool y) { return x || y; });
  }
  friend ClopenSet intersect(const ClopenSet& a, const ClopenSet& b) {
    return a.binary_op(b, [](bool x, bool y) { return x && y; });
  }
  friend ClopenSet subtract(const ClopenSet& a, const ClopenSet& b) {
    return a.binary_op(b, [](bool x, bool y) { return x && !y; });
  }
  ClopenSet complement() const { return whole(shift_).binary_op(*this, [](bool x, bool y) { return x && !y; }); }

  bool subset_of(const ClopenSet& other) const { return subtract(*this, other).is_empty(); }

  friend bool operator==(const ClopenSet& a, const ClopenSet& b) {
    return a.shift_ == b.shift_ && a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.words_ == b.words_;
  }

  std::string str() const {
    if (is_empty()) return "{}";
    if (is_whole()) return "X";
    std::string s = "[";
    for (size_t i = 0; i < words_.size(); ++i) {
      if (i) s += "|";
      s += words_[i];
    }
    s += "]@" + std::to_string(lo_);
    return s;
  }

 private:
  template <class Op>
  ClopenSet binary_op(const ClopenSet& other, Op op) const {
    if (shift_ != other.shift_) throw mismatch_error("clopen sets over different subshifts");
    long wlo = 0, whi = 0;
    bool have = false;
    auto fold = [&](const ClopenSet& c) {
      if (!c.window_empty()) {
        wlo = have ? std::min(wlo, c.lo_) : c.lo_;
        whi = have ? std::max(whi, c.hi_) : c.hi_;
        have = true;
      }
    };
    fold(*this);
    fold(other);
    if (!have) {  // both on the empty window
      bool x = is_whole(), y = other.is_whole();
      return op(x, y) ? whole(shift_) : none(shift_);
    }
    std::vector<std::string> wa = expanded_words(wlo, whi);
    std::vector<std::string> wb = other.expanded_words(wlo, whi);
    std::vector<std::string> out;
    const auto& lang = shift_->words(static_cast<size_t>(whi - wlo + 1));
    size_t ia = 0, ib = 0;
    for (const auto& w : lang) {
      bool x = ia < wa.size() && wa[ia] == w;
      bool y = ib < wb.size() && wb[ib] == w;
      if (x) ++ia;
      if (y) ++ib;
      if (op(x, y)) out.push_back(w);
    }
    return from_words(shift_, wlo, std::move(out));
  }

  void canonicalize() {
    if (window_empty()) return;
    // keep only allowed words
    std::vector<std::string> ws;
    for (auto& w : words_)
      if (shift_->allowed(w)) ws.push_back(std::move(w));
    words_ = std::move(ws);
    if (words_.empty()) {
      lo_ = 0;
      hi_ = -1;
      return;
    }
    // shrink the left extent first, then the right, then re-loop
    bool changed = true;
    while (changed && !window_empty()) {
      changed = shrink(true) || shrink(false);
    }
    if (!window_empty()) {
      const auto& lang = shift_->words(static_cast<size_t>(hi_ - lo_ + 1));
      if (words_.size() == lang.size()) {
        words_ = {""};
        lo_ = 0;
        hi_ = -1;
      }
    } else if (words_.size() == 1 && !words_[0].empty()) {
      words_ = {""};
    }
  }

  // drop the leftmost (or rightmost) coordinate if the word set is saturated
  // there: every reduced word is either fully present or fully absent
  bool shrink(bool left) {
    size_t len = static_cast<size_t>(hi_ - lo_ + 1);
    if (len == 0) return false;
    std::set<std::string> have(words_.begin(), words_.end());
    std::set<std::string> keep, drop;
    const auto& lang = shift_->words(len);
    for (const auto& w : lang) {
      std::string red = left ? w.substr(1) : w.substr(0, len - 1);
      if (have.count(w))
        keep.insert(red);
      else
        drop.insert(red);
    }
    for (const auto& r : keep)
      if (drop.count(r)) return false;
    words_.assign(keep.begin(), keep.end());
    if (left)
      ++lo_;
    else
      --hi_;
    if (len == 1) {  // dropped the last coordinate: now the whole space
      lo_ = 0;
      hi_ = -1;
      words_ = {""};
    }
    return true;
  }

  SubshiftPtr shift_;
  long lo_ = 0, hi_ = -1;
  std::vector<std::string> words_;
};

// the letter partition C_i = {x : x_0 = i}, restricted to allowed letters
inline std::vector<ClopenSet> generating_partition(const SubshiftPtr& s) {
  std::vector<ClopenSet> cells;
  for (char c : s->alphabet())
    if (s->allowed(std::string(1, c))) cells.push_back(ClopenSet::cylinder(s, 0, c));
  return cells;
}

// first return time tau_C = min{n >= 1 : C meets phi^-n(C)}; budget-capped
inline long first_return_time(const ClopenSet& c, long budget = 64) {
  if (c.is_empty()) throw validation_error("first return time of the empty set");
  for (long n = 1; n <= budget; ++n)
    if (!intersect(c, c.shifted(-n)).is_empty()) return n;
  throw budget_error("no return within budget " + std::to_string(budget) +
                     " (the return time may be infinite)");
}

// decide tau_C > bound without a full search
inline bool return_time_exceeds(const ClopenSet& c, long bound) {
  for (long n = 1; n <= bound; ++n)
    if (!intersect(c, c.shifted(-n)).is_empty()) return false;
  return true;
}

struct ReturnCell {
  ClopenSet cell;
  long time;
};

enum class ReturnMode { FirstReturn, FirstEntry };

// level sets of the first return (entry) time.  FirstReturn partitions C by
// min{n >= 1 : phi^n x in C}; FirstEntry partitions X by min{n >= 0 : ...}.
inline std::vector<ReturnCell> return_partition(const ClopenSet& c,
                                                ReturnMode mode = ReturnMode::FirstReturn,
                                                long budget = 64) {
  if (c.is_empty()) throw validation_error("return partition of the empty set");
  const SubshiftPtr& s = c.shift();
  std::vector<ReturnCell> cells;
  ClopenSet remaining = (mode == ReturnMode::FirstReturn) ? c : ClopenSet::whole(s);
  if (mode == ReturnMode::FirstEntry) {
    ClopenSet hit = intersect(remaining, c);
    if (!hit.is_empty()) cells.push_back({hit, 0});
    remaining = subtract(remaining, c);
  }
  for (long n = 1; n <= budget && !remaining.is_empty(); ++n) {
    ClopenSet hit = intersect(remaining, c.shifted(-n));
    if (!hit.is_empty()) cells.push_back({hit, n});
    remaining = subtract(remaining, c.shifted(-n));
  }
  if (!remaining.is_empty()) {
    std::string witness = remaining.window_empty() ? std::string("") : remaining.words().front();
    throw unbounded_return_error(
        "orbit avoids the set beyond budget " + std::to_string(budget) +
            "; witness word " + (witness.empty() ? "(everything)" : witness) + " at " +
            std::to_string(remaining.lo()),
        witness);
  }
  return cells;
}

}  // namespace plflow

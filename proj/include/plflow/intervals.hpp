#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "plflow/dyadic.hpp"

namespace plflow {

// Open bounded interval (a, b) with exact rational endpoints, a < b.
struct OpenInterval {
  Rat lo, hi;
  OpenInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo >= hi) throw validation_error("empty or inverted interval");
  }
  Rat length() const { return hi - lo; }
  bool dyadic() const { return is_dyadic(lo) && is_dyadic(hi); }
  OpenInterval translated(const Rat& t) const { return OpenInterval(lo + t, hi + t); }
  bool contains(const Rat& x) const { return lo < x && x < hi; }
  bool contains_closure_of(const OpenInterval& o) const { return lo < o.lo && o.hi < hi; }
  friend bool operator==(const OpenInterval& a, const OpenInterval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
  std::string str() const {
    return "(" + Dyadic::from_rational(lo).str() + ", " + Dyadic::from_rational(hi).str() + ")";
  }
};

// Finite union of intervals with exact endpoints and open/closed boundary
// flags, kept normalized (sorted, disjoint, non-adjacent-mergeable).
class IntervalSet {
 public:
  struct Piece {
    Rat lo, hi;
    bool lo_closed, hi_closed;
  };

  IntervalSet() = default;

  static IntervalSet empty() { return IntervalSet(); }
  static IntervalSet single(Rat lo, bool lc, Rat hi, bool hc) {
    IntervalSet s;
    s.add(std::move(lo), lc, std::move(hi), hc);
    return s;
  }
  static IntervalSet open(const Rat& lo, const Rat& hi) { return single(lo, false, hi, false); }
  static IntervalSet closed(const Rat& lo, const Rat& hi) { return single(lo, true, hi, true); }

  void add(Rat lo, bool lc, Rat hi, bool hc) {
    if (lo > hi) return;
    if (lo == hi && !(lc && hc)) return;
    pieces_.push_back({std::move(lo), std::move(hi), lc, hc});
    normalize();
  }

  const std::vector<Piece>& pieces() const { return pieces_; }
  bool is_empty() const { return pieces_.empty(); }

  bool contains(const Rat& x) const {
    for (const auto& p : pieces_) {
      if ((p.lo < x || (p.lo == x && p.lo_closed)) && (x < p.hi || (x == p.hi && p.hi_closed)))
        return true;
    }
    return false;
  }

  friend IntervalSet unite(const IntervalSet& a, const IntervalSet& b) {
    IntervalSet r;
    r.pieces_ = a.pieces_;
    r.pieces_.insert(r.pieces_.end(), b.pieces_.begin(), b.pieces_.end());
    r.normalize();
    return r;
  }

  friend IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
    IntervalSet r;
    for (const auto& p : a.pieces_) {
      for (const auto& q : b.pieces_) {
        Rat lo = std::max(p.lo, q.lo);
        Rat hi = std::min(p.hi, q.hi);
        if (lo > hi) continue;
        bool lc = (p.lo == q.lo) ? (p.lo_closed && q.lo_closed)
                                 : (p.lo > q.lo ? p.lo_closed : q.lo_closed);
        bool hc = (p.hi == q.hi) ? (p.hi_closed && q.hi_closed)
                                 : (p.hi < q.hi ? p.hi_closed : q.hi_closed);
        if (lo == hi && !(lc && hc)) continue;
        r.pieces_.push_back({lo, hi, lc, hc});
      }
    }
    r.normalize();
    return r;
  }

  // complement within [lo, hi) -- the fundamental-domain convention
  IntervalSet complement_in(const Rat& lo, const Rat& hi) const {
    IntervalSet r;
    Rat cur = lo;
    bool cur_closed = true;  // [lo, ...
    for (const auto& p : pieces_) {
      if (p.hi < lo || (p.hi == lo && !p.hi_closed)) continue;
      if (p.lo >= hi) break;
      Rat plo = p.lo;
      if (cur < plo || (cur == plo && cur_closed && !p.lo_closed)) {
        bool hc = !p.lo_closed;
        if (!(cur == plo && !(cur_closed && hc)))
          r.pieces_.push_back({cur, std::min(plo, hi), cur_closed, hc && plo <= hi});
        if (plo >= hi) { cur = hi; cur_closed = false; break; }
      }
      if (p.hi > cur || (p.hi == cur && p.hi_closed)) {
        cur = p.hi;
        cur_closed = !p.hi_closed;
      }
    }
    if (cur < hi) r.pieces_.push_back({cur, hi, cur_closed, false});
    r.normalize();
    return r;
  }

  friend IntervalSet subtract(const IntervalSet& a, const IntervalSet& b) {
    if (a.is_empty()) return a;
    Rat lo = a.pieces_.front().lo - 1;
    Rat hi = a.pieces_.back().hi + 1;
    return intersect(a, b.complement_in(lo, hi));
  }

  bool subset_of(const IntervalSet& other) const { return subtract(*this, other).is_empty(); }

  friend bool operator==(const IntervalSet& a, const IntervalSet& b) {
    if (a.pieces_.size() != b.pieces_.size()) return false;
    for (size_t i = 0; i < a.pieces_.size(); ++i) {
      const auto& p = a.pieces_[i];
      const auto& q = b.pieces_[i];
      if (p.lo != q.lo || p.hi != q.hi || p.lo_closed != q.lo_closed ||
          p.hi_closed != q.hi_closed)
        return false;
    }
    return true;
  }

  std::string str() const {
    if (pieces_.empty()) return "{}";
    std::string s;
    for (const auto& p : pieces_) {
      if (!s.empty()) s += " u ";
      s += (p.lo_closed ? "[" : "(");
      s += Dyadic::from_rational(p.lo).str() + ", " + Dyadic::from_rational(p.hi).str();
      s += (p.hi_closed ? "]" : ")");
    }
    return s;
  }

 private:
  void normalize() {
    std::sort(pieces_.begin(), pieces_.end(), [](const Piece& a, const Piece& b) {
      if (a.lo != b.lo) return a.lo < b.lo;
      return a.lo_closed && !b.lo_closed;
    });
    std::vector<Piece> out;
    for (auto& p : pieces_) {
      if (p.lo > p.hi || (p.lo == p.hi && !(p.lo_closed && p.hi_closed))) continue;
      if (!out.empty()) {
        Piece& q = out.back();
        bool overlaps = p.lo < q.hi || (p.lo == q.hi && (p.lo_closed || q.hi_closed));
        if (overlaps) {
          if (p.hi > q.hi || (p.hi == q.hi && p.hi_closed && !q.hi_closed)) {
            q.hi = p.hi;
            q.hi_closed = p.hi_closed;
          }
          continue;
        }
      }
      out.push_back(p);
    }
    pieces_ = std::move(out);
  }

  std::vector<Piece> pieces_;
};

}  // namespace plflow

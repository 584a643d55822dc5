#pragma once

#include <string>
#include <utility>
#include <vector>

#include "plflow/dyadic.hpp"
#include "plflow/intervals.hpp"

namespace plflow {

// Increasing piecewise-affine homeomorphism between closed intervals, stored
// as matched breakpoint/value lists.  Canonical form has no removable
// breakpoints.  `dyadic()` holds when breakpoints and values are dyadic
// rationals and every slope is a power of two; elements of T(phi) require it,
// the PL(phi) variant does not.
class PLMap {
 public:
  PLMap() = default;

  static PLMap from_points(std::vector<Rat> breaks, std::vector<Rat> values) {
    PLMap f;
    f.breaks_ = std::move(breaks);
    f.values_ = std::move(values);
    f.validate_and_canonicalize();
    return f;
  }

  static PLMap identity(const Rat& lo, const Rat& hi) {
    return from_points({lo, hi}, {lo, hi});
  }

  static PLMap affine(const Rat& dom_lo, const Rat& dom_hi, const Rat& img_lo,
                      const Rat& img_hi) {
    return from_points({dom_lo, dom_hi}, {img_lo, img_hi});
  }

  static PLMap translation(const Rat& lo, const Rat& hi, const Rat& t) {
    return from_points({lo, hi}, {lo + t, hi + t});
  }

  // join maps whose domains and values chain end-to-start
  static PLMap concat(const std::vector<PLMap>& parts) {
    if (parts.empty()) throw validation_error("concat of no pieces");
    std::vector<Rat> b = parts[0].breaks_, v = parts[0].values_;
    for (size_t i = 1; i < parts.size(); ++i) {
      const PLMap& p = parts[i];
      if (p.domain_lo() != b.back() || p.values_.front() != v.back())
        throw validation_error("concat pieces do not chain");
      b.insert(b.end(), p.breaks_.begin() + 1, p.breaks_.end());
      v.insert(v.end(), p.values_.begin() + 1, p.values_.end());
    }
    return from_points(std::move(b), std::move(v));
  }

  size_t piece_count() const { return breaks_.size() - 1; }
  const std::vector<Rat>& breaks() const { return breaks_; }
  const std::vector<Rat>& values() const { return values_; }
  const Rat& domain_lo() const { return breaks_.front(); }
  const Rat& domain_hi() const { return breaks_.back(); }
  const Rat& image_lo() const { return values_.front(); }
  const Rat& image_hi() const { return values_.back(); }

  bool dyadic() const { return dyadic_; }

  bool is_identity() const {
    return breaks_.size() == 2 && breaks_ == values_;
  }

  Rat slope(size_t piece) const {
    return (values_[piece + 1] - values_[piece]) / (breaks_[piece + 1] - breaks_[piece]);
  }

  Rat eval(const Rat& x) const {
    if (x < domain_lo() || x > domain_hi())
      throw mismatch_error("PLMap::eval outside domain");
    size_t i = locate(breaks_, x);
    return values_[i] + slope(i) * (x - breaks_[i]);
  }

  Rat eval_inverse(const Rat& y) const {
    if (y < image_lo() || y > image_hi())
      throw mismatch_error("PLMap::eval_inverse outside image");
    size_t i = locate(values_, y);
    return breaks_[i] + (y - values_[i]) / slope(i);
  }

  PLMap inverse() const { return from_points(values_, breaks_); }

  // f.after(g) = f o g; requires image(g) == domain(f)
  PLMap after(const PLMap& g) const {
    if (g.image_lo() != domain_lo() || g.image_hi() != domain_hi())
      throw mismatch_error("compose: image of inner map != domain of outer map");
    std::vector<Rat> b;
    for (const Rat& x : g.breaks_) b.push_back(x);
    for (const Rat& y : breaks_) b.push_back(g.eval_inverse(y));
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    std::vector<Rat> v;
    v.reserve(b.size());
    for (const Rat& x : b) v.push_back(eval(g.eval(x)));
    return from_points(std::move(b), std::move(v));
  }

  // map t |-> f(t - dt) + dv  (domain and values translated)
  PLMap shifted(const Rat& dt, const Rat& dv) const {
    std::vector<Rat> b = breaks_, v = values_;
    for (auto& x : b) x += dt;
    for (auto& y : v) y += dv;
    return from_points(std::move(b), std::move(v));
  }

  PLMap restricted(const Rat& lo, const Rat& hi) const {
    if (lo < domain_lo() || hi > domain_hi() || lo >= hi)
      throw mismatch_error("PLMap::restricted outside domain");
    std::vector<Rat> b{lo}, v{eval(lo)};
    for (size_t i = 0; i + 1 < breaks_.size(); ++i) {
      if (breaks_[i] > lo && breaks_[i] < hi) {
        b.push_back(breaks_[i]);
        v.push_back(values_[i]);
      }
    }
    b.push_back(hi);
    v.push_back(eval(hi));
    return from_points(std::move(b), std::move(v));
  }

  friend bool operator==(const PLMap& a, const PLMap& b) {
    return a.breaks_ == b.breaks_ && a.values_ == b.values_;
  }

  std::string str() const {
    std::string s = "PL[";
    for (size_t i = 0; i < breaks_.size(); ++i) {
      if (i) s += ", ";
      s += "(" + breaks_[i].str() + " -> " + values_[i].str() + ")";
    }
    return s + "]";
  }

  // interior dyadic points where the map differs from the identity, as an
  // exact interval set (open at crossings)
  IntervalSet non_identity_locus() const {
    IntervalSet out;
    for (size_t i = 0; i + 1 < breaks_.size(); ++i) {
      const Rat &t0 = breaks_[i], &t1 = breaks_[i + 1];
      Rat d0 = values_[i] - t0, d1 = values_[i + 1] - t1;
      if (d0 == 0 && d1 == 0) continue;
      if (d0 == 0) {
        out = unite(out, IntervalSet::single(t0, false, t1, d1 != 0));
      } else if (d1 == 0) {
        out = unite(out, IntervalSet::single(t0, true, t1, false));
      } else if ((d0 > 0) == (d1 > 0)) {
        out = unite(out, IntervalSet::closed(t0, t1));
      } else {
        Rat root = t0 + d0 * (t1 - t0) / (d0 - d1);
        out = unite(out, IntervalSet::single(t0, true, root, false));
        out = unite(out, IntervalSet::single(root, false, t1, true));
      }
    }
    return out;
  }

 private:
  static size_t locate(const std::vector<Rat>& xs, const Rat& x) {
    size_t lo = 0, hi = xs.size() - 1;
    while (lo + 1 < hi) {
      size_t mid = (lo + hi) / 2;
      if (xs[mid] <= x)
        lo = mid;
      else
        hi = mid;
    }
    return lo;
  }

  void validate_and_canonicalize() {
    if (breaks_.size() < 2 || breaks_.size() != values_.size())
      throw validation_error("PLMap needs matched breakpoint/value lists");
    for (size_t i = 0; i + 1 < breaks_.size(); ++i) {
      if (breaks_[i] >= breaks_[i + 1]) throw validation_error("breakpoints not increasing");
      if (values_[i] >= values_[i + 1]) throw validation_error("values not increasing");
    }
    std::vector<Rat> b{breaks_[0]}, v{values_[0]};
    for (size_t i = 1; i + 1 < breaks_.size(); ++i) {
      Rat s0 = (values_[i] - v.back()) / (breaks_[i] - b.back());
      Rat s1 = (values_[i + 1] - values_[i]) / (breaks_[i + 1] - breaks_[i]);
      if (s0 == s1) continue;
      b.push_back(breaks_[i]);
      v.push_back(values_[i]);
    }
    b.push_back(breaks_.back());
    v.push_back(values_.back());
    breaks_ = std::move(b);
    values_ = std::move(v);
    dyadic_ = true;
    for (const Rat& x : breaks_)
      if (!is_dyadic(x)) dyadic_ = false;
    for (const Rat& y : values_)
      if (!is_dyadic(y)) dyadic_ = false;
    if (dyadic_)
      for (size_t i = 0; i + 1 < breaks_.size(); ++i)
        if (!is_pow2_rational(slope(i))) dyadic_ = false;
  }

  std::vector<Rat> breaks_, values_;
  bool dyadic_ = true;
};

// Continuous piecewise-affine function (not necessarily monotone); used for
// displacement tables tau(t) = f(t) - t and exact sup-norm gaps.
class PWAffine {
 public:
  PWAffine() = default;
  PWAffine(std::vector<Rat> breaks, std::vector<Rat> values)
      : breaks_(std::move(breaks)), values_(std::move(values)) {
    if (breaks_.size() < 2 || breaks_.size() != values_.size())
      throw validation_error("PWAffine needs matched lists");
  }

  static PWAffine displacement_of(const PLMap& f) {
    std::vector<Rat> v;
    v.reserve(f.breaks().size());
    for (size_t i = 0; i < f.breaks().size(); ++i) v.push_back(f.values()[i] - f.breaks()[i]);
    return PWAffine(f.breaks(), std::move(v));
  }

  const std::vector<Rat>& breaks() const { return breaks_; }
  const std::vector<Rat>& values() const { return values_; }
  const Rat& domain_lo() const { return breaks_.front(); }
  const Rat& domain_hi() const { return breaks_.back(); }

  Rat eval(const Rat& x) const {
    size_t i = 0;
    while (i + 2 < breaks_.size() && breaks_[i + 1] <= x) ++i;
    Rat s = (values_[i + 1] - values_[i]) / (breaks_[i + 1] - breaks_[i]);
    return values_[i] + s * (x - breaks_[i]);
  }

  // exact sup over the common domain of |this - other| (attained at a
  // breakpoint of the refined partition)
  Rat sup_abs_diff(const PWAffine& other) const {
    if (domain_lo() != other.domain_lo() || domain_hi() != other.domain_hi())
      throw mismatch_error("PWAffine::sup_abs_diff domain mismatch");
    std::vector<Rat> xs = breaks_;
    xs.insert(xs.end(), other.breaks_.begin(), other.breaks_.end());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    Rat best = 0;
    for (const Rat& x : xs) {
      Rat d = eval(x) - other.eval(x);
      if (d < 0) d = -d;
      if (d > best) best = d;
    }
    return best;
  }

  Rat max_value() const {
    Rat best = values_.front();
    for (const Rat& v : values_)
      if (v > best) best = v;
    return best;
  }
  Rat min_value() const {
    Rat best = values_.front();
    for (const Rat& v : values_)
      if (v < best) best = v;
    return best;
  }

 private:
  std::vector<Rat> breaks_, values_;
};

// Dyadic PL homeomorphism [a,b] -> [c,d] with power-of-two slopes, built by
// repeated doubling toward the longer side.  Exists for any two dyadic
// intervals; this is the workhorse behind interval conjugations and
// Parry-Sullivan fiber maps.
inline PLMap dyadic_pl_between(const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
  if (!(is_dyadic(a) && is_dyadic(b) && is_dyadic(c) && is_dyadic(d)))
    throw validation_error("dyadic_pl_between needs dyadic endpoints");
  if (a >= b || c >= d) throw validation_error("dyadic_pl_between needs nonempty intervals");
  Rat p = b - a, q = d - c;
  if (p == q) return PLMap::translation(a, b, c - a);
  if (q < p) return dyadic_pl_between(c, d, a, b).inverse();
  if (q <= 2 * p) {
    Rat cut = a + (q - p);
    if (cut == b) return PLMap::affine(a, b, c, d);  // exact doubling
    return PLMap::from_points({a, cut, b}, {c, c + 2 * (q - p), d});
  }
  PLMap doubled = PLMap::affine(a, b, c, c + 2 * p);
  return dyadic_pl_between(c, c + 2 * p, c, d).after(doubled);
}

// Increasing dyadic PL interpolation through the given points.
inline PLMap dyadic_interp(const std::vector<std::pair<Rat, Rat>>& pts) {
  if (pts.size() < 2) throw validation_error("dyadic_interp needs >= 2 points");
  std::vector<PLMap> parts;
  for (size_t i = 0; i + 1 < pts.size(); ++i)
    parts.push_back(dyadic_pl_between(pts[i].first, pts[i + 1].first, pts[i].second,
                                      pts[i + 1].second));
  return PLMap::concat(parts);
}

}  // namespace plflow

#pragma once

#include <numeric>
#include <string>

#include "plflow/subshift.hpp"

namespace plflow {

// A point of a subshift with a total, deterministic coordinate oracle.
// Two oracle kinds: eventually periodic (left^inf center right^inf, center
// anchored at coordinate 0 before shifting) and two-sided substitution fixed
// points grown from a seed letter pair.
class SymbolicPoint {
 public:
  enum class Kind { EventuallyPeriodic, SubstitutionFixed };

  static SymbolicPoint eventually_periodic(SubshiftPtr s, std::string left, std::string center,
                                           std::string right, long long shift_by = 0) {
    SymbolicPoint p;
    p.shift_ = std::move(s);
    p.kind_ = Kind::EventuallyPeriodic;
    p.left_ = std::move(left);
    p.center_ = std::move(center);
    p.right_ = std::move(right);
    p.offset_ = shift_by;
    if (p.left_.empty() || p.right_.empty())
      throw validation_error("eventually periodic point needs nonempty period words");
    p.validate();
    return p;
  }

  static SymbolicPoint periodic(SubshiftPtr s, const std::string& word, long long shift_by = 0) {
    return eventually_periodic(std::move(s), word, "", word, shift_by);
  }

  // fixed point of sigma^power with seed pair l|r: sigma^power(l) ends with l,
  // sigma^power(r) starts with r, and lr allowed
  static SymbolicPoint substitution_fixed(SubshiftPtr s, char seed_left, char seed_right,
                                          long long shift_by = 0) {
    if (s->kind() != SubshiftKind::Substitution)
      throw validation_error("substitution fixed point over a non-substitution system");
    SymbolicPoint p;
    p.shift_ = std::move(s);
    p.kind_ = Kind::SubstitutionFixed;
    p.seed_left_ = seed_left;
    p.seed_right_ = seed_right;
    p.offset_ = shift_by;
    p.power_ = p.find_seed_power();
    p.blocks_ = std::make_shared<Blocks>();
    p.validate();
    return p;
  }

  const SubshiftPtr& shift() const { return shift_; }
  Kind kind() const { return kind_; }
  long long offset() const { return offset_; }

  char at(long long n) const { return model_at(n + offset_); }

  std::string window(long long lo, long long hi) const {
    std::string w;
    for (long long i = lo; i <= hi; ++i) w += at(i);
    return w;
  }

  // the shifted point phi^k(x): coordinates (phi^k x)(n) = x(n + k)
  SymbolicPoint shifted(long long k) const {
    SymbolicPoint p = *this;
    p.offset_ += k;
    return p;
  }

  // exact for eventually-periodic pairs; for substitution points structural
  // identity plus a wide-window comparison (documented approximation)
  friend bool points_equal(const SymbolicPoint& a, const SymbolicPoint& b) {
    if (a.shift_ != b.shift_) return false;
    if (a.kind_ == Kind::EventuallyPeriodic && b.kind_ == Kind::EventuallyPeriodic) {
      long long lp = std::lcm<long long>(a.left_.size(), b.left_.size());
      long long rp = std::lcm<long long>(a.right_.size(), b.right_.size());
      long long span = static_cast<long long>(a.center_.size() + b.center_.size()) +
                       std::max<long long>(std::abs(a.offset_ - b.offset_), 0) + 2;
      long long lo = -(span + 2 * lp), hi = span + 2 * rp;
      return a.window(lo, hi) == b.window(lo, hi);
    }
    if (a.kind_ == Kind::SubstitutionFixed && b.kind_ == Kind::SubstitutionFixed &&
        a.seed_left_ == b.seed_left_ && a.seed_right_ == b.seed_right_)
      return a.offset_ == b.offset_;
    long long w = 64 + std::abs(a.offset_) + std::abs(b.offset_);
    return a.window(-w, w) == b.window(-w, w);
  }

  std::string str() const {
    std::string s = window(-6, -1) + "." + window(0, 5);
    return s;
  }

 private:
  SymbolicPoint() = default;

  char model_at(long long m) const {
    if (kind_ == Kind::EventuallyPeriodic) {
      long long cl = static_cast<long long>(center_.size());
      if (m >= 0 && m < cl) return center_[static_cast<size_t>(m)];
      if (m >= cl) {
        long long r = (m - cl) % static_cast<long long>(right_.size());
        return right_[static_cast<size_t>(r)];
      }
      long long ll = static_cast<long long>(left_.size());
      long long r = ((-m - 1) % ll);
      return left_[static_cast<size_t>(ll - 1 - r)];
    }
    // substitution fixed point; the grown blocks are shared between copies
    std::lock_guard<std::mutex> lk(blocks_->mu);
    if (m >= 0) {
      ensure_right(m + 1);
      return blocks_->right[static_cast<size_t>(m)];
    }
    ensure_left(-m);
    return blocks_->left[blocks_->left.size() - static_cast<size_t>(-m)];
  }

  int find_seed_power() const {
    const auto& rules = shift_->substitution_rules();
    auto apply = [&](const std::string& w) {
      std::string out;
      for (char c : w) out += rules.at(c);
      return out;
    };
    for (int p = 1; p <= 8; ++p) {
      std::string l(1, seed_left_), r(1, seed_right_);
      for (int i = 0; i < p; ++i) {
        l = apply(l);
        r = apply(r);
      }
      bool lok = l.size() >= 2 && l.back() == seed_left_;
      bool rok = r.size() >= 2 && r.front() == seed_right_;
      if (lok && rok) {
        std::string pair{seed_left_, seed_right_};
        if (!shift_->allowed(pair))
          throw validation_error("seed pair not in the language: " + pair);
        return p;
      }
    }
    throw validation_error("no power <= 8 fixes the seed pair");
  }

  void ensure_right(long long len) const {
    const auto& rules = shift_->substitution_rules();
    if (blocks_->right.empty()) blocks_->right = std::string(1, seed_right_);
    while (static_cast<long long>(blocks_->right.size()) < len) {
      for (int i = 0; i < power_; ++i) {
        std::string out;
        for (char c : blocks_->right) out += rules.at(c);
        blocks_->right = std::move(out);
      }
    }
  }

  void ensure_left(long long len) const {
    const auto& rules = shift_->substitution_rules();
    if (blocks_->left.empty()) blocks_->left = std::string(1, seed_left_);
    while (static_cast<long long>(blocks_->left.size()) < len) {
      for (int i = 0; i < power_; ++i) {
        std::string out;
        for (char c : blocks_->left) out += rules.at(c);
        blocks_->left = std::move(out);
      }
    }
  }

  void validate() const {
    long long v = 16;
    if (kind_ == Kind::EventuallyPeriodic)
      v = 2 * static_cast<long long>(left_.size() + center_.size() + right_.size()) + 16;
    std::string w = window(-v, v);
    if (!shift_->allowed(w))
      throw validation_error("point window not in the language: " + w);
  }

  struct Blocks {
    std::mutex mu;
    std::string left, right;
  };

  SubshiftPtr shift_;
  Kind kind_ = Kind::EventuallyPeriodic;
  std::string left_, center_, right_;
  char seed_left_ = 0, seed_right_ = 0;
  int power_ = 1;
  long long offset_ = 0;
  std::shared_ptr<Blocks> blocks_;
};

}  // namespace plflow

#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "plflow/errors.hpp"

namespace plflow {

class Subshift;
using SubshiftPtr = std::shared_ptr<const Subshift>;

enum class SubshiftKind { Full, SFT, Substitution, Periodic, Induced };

// Two-sided subshift over a finite alphabet of single characters.  Immutable;
// language queries are cached behind a mutex, so concurrent use is safe and
// results are independent of the cache.
class Subshift : public std::enable_shared_from_this<Subshift> {
 public:
  static constexpr size_t kDefaultWordBudget = size_t(1) << 22;

  static SubshiftPtr full_shift(std::string alphabet, size_t budget = kDefaultWordBudget) {
    auto s = std::shared_ptr<Subshift>(new Subshift(SubshiftKind::Full, std::move(alphabet), budget));
    return s;
  }

  static SubshiftPtr sft_forbidden(std::string alphabet, std::vector<std::string> forbidden,
                                   size_t budget = kDefaultWordBudget) {
    auto s = std::shared_ptr<Subshift>(new Subshift(SubshiftKind::SFT, std::move(alphabet), budget));
    s->forbidden_ = std::move(forbidden);
    for (const auto& w : s->forbidden_) {
      if (w.empty()) throw validation_error("empty forbidden word");
      s->check_letters(w);
    }
    s->build_sft_graph();
    return s;
  }

  static SubshiftPtr sft_allowed(std::string alphabet, size_t n, std::vector<std::string> allowed,
                                 size_t budget = kDefaultWordBudget) {
    for (const auto& w : allowed)
      if (w.size() != n) throw validation_error("allowed word of wrong length: " + w);
    // an SFT given by allowed n-words forbids exactly the complementary n-words
    std::set<std::string> ok(allowed.begin(), allowed.end());
    std::vector<std::string> forb;
    std::string w(n, alphabet.empty() ? '?' : alphabet[0]);
    size_t total = 1;
    for (size_t i = 0; i < n; ++i) {
      total *= alphabet.size();
      if (total > budget) throw budget_error("allowed_n complement exceeds word budget");
    }
    std::vector<size_t> idx(n, 0);
    while (true) {
      for (size_t i = 0; i < n; ++i) w[i] = alphabet[idx[i]];
      if (!ok.count(w)) forb.push_back(w);
      size_t p = n;
      while (p > 0 && ++idx[p - 1] == alphabet.size()) idx[--p] = 0;
      if (p == 0) break;
    }
    return sft_forbidden(std::move(alphabet), std::move(forb), budget);
  }

  static SubshiftPtr substitution(std::string alphabet, std::map<char, std::string> rules,
                                  size_t budget = kDefaultWordBudget) {
    auto s = std::shared_ptr<Subshift>(new Subshift(SubshiftKind::Substitution, std::move(alphabet), budget));
    for (char c : s->alphabet_) {
      auto it = rules.find(c);
      if (it == rules.end() || it->second.empty())
        throw validation_error(std::string("substitution rule missing for symbol ") + c);
      s->check_letters(it->second);
    }
    s->rules_ = std::move(rules);
    s->check_primitive();
    return s;
  }

  static SubshiftPtr periodic(std::string alphabet, std::string word,
                              size_t budget = kDefaultWordBudget) {
    auto s = std::shared_ptr<Subshift>(new Subshift(SubshiftKind::Periodic, std::move(alphabet), budget));
    if (word.empty()) throw validation_error("periodic orbit needs a nonempty word");
    s->check_letters(word);
    s->periodic_word_ = primitive_root(word);
    return s;
  }

  SubshiftKind kind() const { return kind_; }
  const std::string& alphabet() const { return alphabet_; }
  size_t alphabet_size() const { return alphabet_.size(); }
  size_t word_budget() const { return budget_; }
  const std::vector<std::string>& forbidden_words() const { return forbidden_; }
  const std::map<char, std::string>& substitution_rules() const { return rules_; }
  const std::string& periodic_word() const { return periodic_word_; }

  int letter_index(char c) const {
    auto p = alphabet_.find(c);
    if (p == std::string::npos)
      throw validation_error(std::string("symbol not in alphabet: ") + c);
    return static_cast<int>(p);
  }

  // length-n factors of the language, sorted; exact for every presentation
  const std::vector<std::string>& words(size_t n) const {
    if (n == 0) throw validation_error("words(0)");
    std::lock_guard<std::mutex> lk(mu_);
    auto it = lang_.find(n);
    if (it != lang_.end()) return it->second;
    std::vector<std::string> ws = compute_words(n);
    std::sort(ws.begin(), ws.end());
    return lang_.emplace(n, std::move(ws)).first->second;
  }

  // direct membership test; never enumerates the language
  bool allowed(const std::string& w) const {
    if (w.empty()) return true;
    for (char c : w)
      if (alphabet_.find(c) == std::string::npos) return false;
    switch (kind_) {
      case SubshiftKind::Full:
        return true;
      case SubshiftKind::Periodic: {
        std::string rep;
        while (rep.size() < w.size() + periodic_word_.size()) rep += periodic_word_;
        return rep.find(w) != std::string::npos;
      }
      case SubshiftKind::SFT: {
        if (contains_forbidden(w)) return false;
        size_t sl = states_[0].size();
        if (w.size() <= sl) {
          for (const auto& s : states_)
            if (s.find(w) != std::string::npos) return true;
          return false;
        }
        for (size_t i = 0; i + sl <= w.size(); ++i)
          if (!std::binary_search(states_.begin(), states_.end(), w.substr(i, sl)))
            return false;
        return true;
      }
      case SubshiftKind::Substitution: {
        for (const auto& xy : two_factors()) {
          std::string img = xy;
          while (img.size() < 2 * w.size()) {
            img = apply_rules(img);
            if (img.size() > budget_) throw budget_error("substitution image exceeds budget");
          }
          if (img.find(w) != std::string::npos) return true;
        }
        return false;
      }
      case SubshiftKind::Induced:
        return induced_allowed(w);
    }
    throw error("unreachable");
  }

  // index of w in the sorted language of its length; -1 if absent
  long word_index(const std::string& w) const {
    const auto& ws = words(w.size());
    auto it = std::lower_bound(ws.begin(), ws.end(), w);
    if (it == ws.end() || *it != w) return -1;
    return static_cast<long>(it - ws.begin());
  }

  // exact language oracle for induced systems; set by induced_system()
  using LanguageOracle = bool (*)(const void*, const std::string&);

 public:
  virtual ~Subshift() = default;

 protected:
  Subshift(SubshiftKind k, std::string alphabet, size_t budget)
      : kind_(k), alphabet_(std::move(alphabet)), budget_(budget) {
    if (alphabet_.empty()) throw validation_error("empty alphabet");
    std::set<char> seen;
    for (char c : alphabet_)
      if (!seen.insert(c).second)
        throw validation_error("duplicate symbol in alphabet");
  }

  virtual std::vector<std::string> induced_words(size_t) const {
    throw validation_error("not an induced system");
  }
  virtual bool induced_allowed(const std::string&) const {
    throw validation_error("not an induced system");
  }

 private:
  void check_letters(const std::string& w) const {
    for (char c : w)
      if (alphabet_.find(c) == std::string::npos)
        throw validation_error(std::string("symbol not in alphabet: ") + c);
  }

  static std::string primitive_root(const std::string& w) {
    for (size_t p = 1; p <= w.size(); ++p) {
      if (w.size() % p) continue;
      bool ok = true;
      for (size_t i = p; i < w.size() && ok; ++i) ok = w[i] == w[i - p];
      if (ok) return w.substr(0, p);
    }
    return w;
  }

  bool contains_forbidden(const std::string& w) const {
    for (const auto& f : forbidden_)
      if (w.find(f) != std::string::npos) return true;
    return false;
  }

  void build_sft_graph() {
    size_t maxf = 2;
    for (const auto& f : forbidden_) maxf = std::max(maxf, f.size());
    window_ = maxf;
    size_t sl = window_ - 1;
    // candidate states: forbidden-free (window-1)-words
    std::vector<std::string> states;
    std::string w(sl, alphabet_[0]);
    std::vector<size_t> idx(sl, 0);
    size_t total = 1;
    for (size_t i = 0; i < sl; ++i) {
      total *= alphabet_.size();
      if (total > budget_) throw budget_error("SFT state space exceeds word budget");
    }
    while (true) {
      for (size_t i = 0; i < sl; ++i) w[i] = alphabet_[idx[i]];
      if (!contains_forbidden(w)) states.push_back(w);
      size_t p = sl;
      while (p > 0 && ++idx[p - 1] == alphabet_.size()) idx[--p] = 0;
      if (p == 0) break;
    }
    // prune to states with bi-infinite continuations
    std::map<std::string, std::vector<std::string>> out, in;
    bool changed = true;
    std::set<std::string> alive(states.begin(), states.end());
    while (changed) {
      changed = false;
      out.clear();
      in.clear();
      for (const auto& s : alive) {
        for (char c : alphabet_) {
          std::string ext = s + c;
          if (contains_forbidden(ext)) continue;
          std::string t = ext.substr(1);
          if (!alive.count(t)) continue;
          out[s].push_back(t);
          in[t].push_back(s);
        }
      }
      for (auto it = alive.begin(); it != alive.end();) {
        if (out[*it].empty() || in[*it].empty()) {
          it = alive.erase(it);
          changed = true;
        } else {
          ++it;
        }
      }
    }
    if (alive.empty()) throw validation_error("SFT presentation defines an empty subshift");
    states_.assign(alive.begin(), alive.end());
  }

  void check_primitive() {
    size_t d = alphabet_.size();
    std::vector<std::vector<bool>> reach(d, std::vector<bool>(d, false));
    for (size_t i = 0; i < d; ++i)
      for (char c : rules_.at(alphabet_[i])) reach[i][letter_index(c)] = true;
    // Wielandt bound for the primitivity exponent
    size_t bound = (d - 1) * (d - 1) + 1;
    auto cur = reach;
    for (size_t step = 1; step <= bound; ++step) {
      bool all = true;
      for (size_t i = 0; i < d && all; ++i)
        for (size_t j = 0; j < d && all; ++j)
          if (!cur[i][j]) all = false;
      if (all) return;
      std::vector<std::vector<bool>> nxt(d, std::vector<bool>(d, false));
      for (size_t i = 0; i < d; ++i)
        for (size_t k = 0; k < d; ++k)
          if (cur[i][k])
            for (size_t j = 0; j < d; ++j)
              if (reach[k][j]) nxt[i][j] = true;
      cur = std::move(nxt);
    }
    throw validation_error("substitution is not primitive");
  }

  std::string apply_rules(const std::string& w) const {
    std::string out;
    for (char c : w) out += rules_.at(c);
    return out;
  }

  // the 2-factor set of a primitive substitution language: seed with long
  // images of letters, then close under taking images
  const std::set<std::string>& two_factors() const {
    std::lock_guard<std::mutex> lk(two_mu_);
    if (!two_.empty()) return two_;
    std::set<std::string> two;
    for (char c : alphabet_) {
      std::string w(1, c);
      while (w.size() < 2) {
        std::string nw = apply_rules(w);
        if (nw == w) throw validation_error("substitution does not grow");
        w = std::move(nw);
      }
      std::string grown = apply_rules(apply_rules(w));
      for (size_t i = 0; i + 2 <= grown.size(); ++i) two.insert(grown.substr(i, 2));
    }
    bool grew = true;
    while (grew) {
      grew = false;
      std::set<std::string> add;
      for (const auto& xy : two) {
        std::string img = apply_rules(xy);
        for (size_t i = 0; i + 2 <= img.size(); ++i)
          if (!two.count(img.substr(i, 2))) add.insert(img.substr(i, 2));
      }
      if (!add.empty()) {
        two.insert(add.begin(), add.end());
        grew = true;
      }
    }
    two_ = std::move(two);
    return two_;
  }

  std::vector<std::string> compute_words(size_t n) const {
    switch (kind_) {
      case SubshiftKind::Full: {
        size_t total = 1;
        for (size_t i = 0; i < n; ++i) {
          total *= alphabet_.size();
          if (total > budget_) throw budget_error("full-shift language exceeds word budget");
        }
        std::vector<std::string> ws;
        ws.reserve(total);
        std::string w(n, alphabet_[0]);
        std::vector<size_t> idx(n, 0);
        while (true) {
          for (size_t i = 0; i < n; ++i) w[i] = alphabet_[idx[i]];
          ws.push_back(w);
          size_t p = n;
          while (p > 0 && ++idx[p - 1] == alphabet_.size()) idx[--p] = 0;
          if (p == 0) break;
        }
        return ws;
      }
      case SubshiftKind::Periodic: {
        std::string rep;
        while (rep.size() < n + periodic_word_.size()) rep += periodic_word_;
        std::set<std::string> ws;
        for (size_t i = 0; i < periodic_word_.size(); ++i) ws.insert(rep.substr(i, n));
        return {ws.begin(), ws.end()};
      }
      case SubshiftKind::SFT: {
        std::set<std::string> ws;
        if (n <= states_[0].size()) {
          for (const auto& s : states_)
            for (size_t i = 0; i + n <= s.size(); ++i) ws.insert(s.substr(i, n));
          return {ws.begin(), ws.end()};
        }
        // walk the pruned graph
        std::set<std::string> alive(states_.begin(), states_.end());
        std::vector<std::string> frontier(states_.begin(), states_.end());
        for (size_t len = states_[0].size(); len < n; ++len) {
          std::vector<std::string> next;
          for (const auto& w : frontier) {
            for (char c : alphabet_) {
              std::string ext = w + c;
              if (contains_forbidden(ext.substr(ext.size() - window_)))
                continue;
              if (!alive.count(ext.substr(ext.size() - states_[0].size()))) continue;
              next.push_back(std::move(ext));
              if (next.size() > budget_) throw budget_error("SFT language exceeds word budget");
            }
          }
          frontier = std::move(next);
        }
        return frontier;
      }
      case SubshiftKind::Substitution: {
        // read n-factors off long images of the saturated 2-factor set
        std::set<std::string> ws;
        for (const auto& xy : two_factors()) {
          std::string img = xy;
          while (img.size() < 2 * n) {
            img = apply_rules(img);
            if (img.size() > budget_) throw budget_error("substitution image exceeds budget");
          }
          for (size_t i = 0; i + n <= img.size(); ++i) {
            ws.insert(img.substr(i, n));
            if (ws.size() > budget_) throw budget_error("substitution language exceeds budget");
          }
        }
        return {ws.begin(), ws.end()};
      }
      case SubshiftKind::Induced:
        return induced_words(n);
    }
    throw error("unreachable");
  }

  SubshiftKind kind_;
  std::string alphabet_;
  size_t budget_;
  std::vector<std::string> forbidden_;  // SFT
  size_t window_ = 2;                   // SFT
  std::vector<std::string> states_;     // SFT essential graph states
  std::map<char, std::string> rules_;   // Substitution
  std::string periodic_word_;           // Periodic

  mutable std::mutex mu_;
  mutable std::map<size_t, std::vector<std::string>> lang_;
  mutable std::mutex two_mu_;
  mutable std::set<std::string> two_;
};

// language comparison up to a window length
inline bool language_subset(const SubshiftPtr& a, const SubshiftPtr& b, size_t up_to) {
  for (size_t n = 1; n <= up_to; ++n) {
    const auto& wa = a->words(n);
    for (const auto& w : wa) {
      bool ok = true;
      for (char c : w)
        if (b->alphabet().find(c) == std::string::npos) ok = false;
      if (!ok || !b->allowed(w)) return false;
    }
  }
  return true;
}

inline bool language_equal(const SubshiftPtr& a, const SubshiftPtr& b, size_t up_to) {
  return language_subset(a, b, up_to) && language_subset(b, a, up_to);
}

// the SFT X_n allowing exactly the length-n factors of S
inline SubshiftPtr sft_approximation(const SubshiftPtr& s, size_t n) {
  return Subshift::sft_allowed(s->alphabet(), n, s->words(n), s->word_budget());
}

// word-reversal of the language (orientation-reversing pre-pass)
inline SubshiftPtr reverse_system(const SubshiftPtr& s) {
  auto rev = [](std::string w) {
    std::reverse(w.begin(), w.end());
    return w;
  };
  switch (s->kind()) {
    case SubshiftKind::Full:
      return s;
    case SubshiftKind::Periodic:
      return Subshift::periodic(s->alphabet(), rev(s->periodic_word()), s->word_budget());
    case SubshiftKind::SFT: {
      std::vector<std::string> forb;
      for (const auto& f : s->forbidden_words()) forb.push_back(rev(f));
      return Subshift::sft_forbidden(s->alphabet(), std::move(forb), s->word_budget());
    }
    case SubshiftKind::Substitution: {
      std::map<char, std::string> rules;
      for (const auto& [c, w] : s->substitution_rules()) rules[c] = rev(w);
      return Subshift::substitution(s->alphabet(), std::move(rules), s->word_budget());
    }
    case SubshiftKind::Induced:
      throw validation_error("cannot reverse an induced presentation");
  }
  throw error("unreachable");
}

}  // namespace plflow

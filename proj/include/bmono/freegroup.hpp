#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace bmono {

template <class Sym>
struct Letter {
  Sym sym;
  int exp = 1;  // +1 or -1
  auto operator<=>(const Letter&) const = default;
  bool operator==(const Letter&) const = default;
  Letter inverse() const { return {sym, -exp}; }
  bool cancels(const Letter& o) const { return sym == o.sym && exp == -o.exp; }
};

// Freely reduced word in the free group on Sym.
template <class Sym>
class Word {
 public:
  using letter_type = Letter<Sym>;

  Word() = default;
  explicit Word(const Sym& s, int e = 1) { letters_.push_back({s, e}); }
  explicit Word(std::vector<letter_type> ls) {
    for (auto& l : ls) push(l);
  }

  static Word generator(const Sym& s) { return Word(s, 1); }

  const std::vector<letter_type>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const letter_type& operator[](std::size_t k) const { return letters_[k]; }

  void push(const letter_type& l) {
    if (!letters_.empty() && letters_.back().cancels(l))
      letters_.pop_back();
    else
      letters_.push_back(l);
  }

  Word& operator*=(const Word& o) {
    for (auto& l : o.letters_) push(l);
    return *this;
  }
  friend Word operator*(Word a, const Word& b) { return a *= b; }

  Word inverse() const {
    Word w;
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(it->inverse());
    return w;
  }

  Word slice(std::size_t from, std::size_t to) const {
    Word w;
    for (std::size_t k = from; k < to; ++k) w.letters_.push_back(letters_[k]);
    return w;
  }

  Word cyclically_reduced() const {
    std::size_t i = 0, j = letters_.size();
    while (j - i >= 2 && letters_[i].cancels(letters_[j - 1])) {
      ++i;
      --j;
    }
    return slice(i, j);
  }

  // Least element among all rotations of the word and of its inverse.
  std::vector<letter_type> canonical() const {
    Word c = cyclically_reduced();
    std::vector<letter_type> best = c.letters_;
    for (const Word& v : {c, c.inverse()}) {
      auto ls = v.letters_;
      for (std::size_t r = 0; r < ls.size(); ++r) {
        std::rotate(ls.begin(), ls.begin() + 1, ls.end());
        if (ls < best) best = ls;
      }
    }
    return best;
  }

  // w = u g u^-1 with g a single generator (exponent +1)
  bool is_conjugate_of_generator() const {
    if (letters_.size() % 2 == 0) return false;
    std::size_t mid = letters_.size() / 2;
    if (letters_[mid].exp != 1) return false;
    for (std::size_t k = 0; k < mid; ++k)
      if (!(letters_[k] == letters_[letters_.size() - 1 - k].inverse())) return false;
    return true;
  }

  std::map<Sym, int> exponent_sums() const {
    std::map<Sym, int> m;
    for (auto& l : letters_) m[l.sym] += l.exp;
    std::erase_if(m, [](auto& kv) { return kv.second == 0; });
    return m;
  }

  template <class F>
  auto map(F&& f) const {
    using T = std::decay_t<decltype(f(std::declval<Sym>()))>;
    Word<T> w;
    for (auto& l : letters_) w.push({f(l.sym), l.exp});
    return w;
  }

  auto operator<=>(const Word&) const = default;
  bool operator==(const Word&) const = default;

 private:
  std::vector<letter_type> letters_;
};

template <class Sym>
Word<Sym> commutator(const Word<Sym>& a, const Word<Sym>& b) {
  return a * b * a.inverse() * b.inverse();
}

template <class Sym, class Fmt>
std::string format_word(const Word<Sym>& w, Fmt&& fmt) {
  std::string s;
  for (auto& l : w.letters()) {
    if (!s.empty()) s += ' ';
    s += fmt(l.sym);
    if (l.exp < 0) s += "^-1";
  }
  return s;
}

// Endomorphism of a free group, generators not in the map are fixed.
template <class Sym>
class Endo {
 public:
  Endo() = default;

  void set(const Sym& s, Word<Sym> w) {
    if (w == Word<Sym>::generator(s))
      image_.erase(s);
    else
      image_[s] = std::move(w);
  }

  Word<Sym> image(const Sym& s) const {
    auto it = image_.find(s);
    return it == image_.end() ? Word<Sym>::generator(s) : it->second;
  }

  Word<Sym> operator()(const Word<Sym>& w) const {
    Word<Sym> out;
    for (auto& l : w.letters()) {
      auto it = image_.find(l.sym);
      if (it == image_.end())
        out.push(l);
      else
        out *= (l.exp > 0 ? it->second : it->second.inverse());
    }
    return out;
  }

  // (f * g)(x) = f(g(x))
  friend Endo operator*(const Endo& f, const Endo& g) {
    Endo h;
    for (auto& [s, w] : g.image_) h.set(s, f(w));
    for (auto& [s, w] : f.image_)
      if (!g.image_.count(s)) h.set(s, w);
    return h;
  }

  bool is_identity() const { return image_.empty(); }
  const std::map<Sym, Word<Sym>>& nontrivial() const { return image_; }

  bool operator==(const Endo&) const = default;

 private:
  std::map<Sym, Word<Sym>> image_;
};

}  // namespace bmono

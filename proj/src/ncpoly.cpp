#include "qma/ncpoly.hpp"

#include <algorithm>

namespace qma {

bool Word::contains(GenIndex g) const {
  return std::find(letters_.begin(), letters_.end(), g) != letters_.end();
}

Word Word::concat(const Word& other) const {
  std::vector<GenIndex> out;
  out.reserve(size() + other.size());
  out.insert(out.end(), letters_.begin(), letters_.end());
  out.insert(out.end(), other.letters_.begin(), other.letters_.end());
  return Word(std::move(out));
}

Word Word::splice(std::size_t pos, std::size_t len, const Word& middle) const {
  std::vector<GenIndex> out;
  out.reserve(size() - len + middle.size());
  out.insert(out.end(), letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(pos));
  out.insert(out.end(), middle.letters_.begin(), middle.letters_.end());
  out.insert(out.end(), letters_.begin() + static_cast<std::ptrdiff_t>(pos + len), letters_.end());
  return Word(std::move(out));
}

std::strong_ordering Word::operator<=>(const Word& o) const {
  if (auto c = size() <=> o.size(); c != 0) return c;
  return letters_ <=> o.letters_;
}

NCPoly NCPoly::constant(const Scalar& c) { return monomial(Word{}, c); }

NCPoly NCPoly::monomial(const Word& w, const Scalar& c) {
  NCPoly p;
  p.add_term(w, c);
  return p;
}

std::size_t NCPoly::max_degree() const noexcept {
  // map order is length-first, so the last key is the longest
  return terms_.empty() ? 0 : terms_.rbegin()->first.size();
}

bool NCPoly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Scalar NCPoly::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar{} : it->second;
}

void NCPoly::add_term(const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

NCPoly NCPoly::operator-() const {
  NCPoly r = *this;
  for (auto& [w, c] : r.terms_) c = -c;
  return r;
}

NCPoly NCPoly::scaled(const Scalar& c) const {
  NCPoly r;
  if (c.is_zero()) return r;
  for (const auto& [w, v] : terms_) r.add_term(w, v * c);
  return r;
}

NCPoly NCPoly::free_product(const NCPoly& a, const NCPoly& b) {
  NCPoly r;
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_) r.add_term(wa.concat(wb), ca * cb);
  return r;
}

}  // namespace qma

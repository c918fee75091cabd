#include "ncfactor/monomial.hpp"

#include <algorithm>

#include "ncfactor/errors.hpp"

namespace ncfactor {

Monomial Monomial::concat(const Monomial& o) const {
  Monomial r;
  r.word.reserve(word.size() + o.word.size());
  r.word = word;
  r.word.insert(r.word.end(), o.word.begin(), o.word.end());
  return r;
}

Monomial Monomial::prefix(size_t len) const {
  require(len <= word.size(), Errc::BadDegrees, "prefix longer than word");
  return Monomial(std::vector<VarIndex>(word.begin(), word.begin() + len));
}

Monomial Monomial::suffix_from(size_t pos) const {
  require(pos <= word.size(), Errc::BadDegrees, "suffix start past end");
  return Monomial(std::vector<VarIndex>(word.begin() + pos, word.end()));
}

Monomial Monomial::subword(size_t pos, size_t len) const {
  require(pos + len <= word.size(), Errc::BadDegrees, "subword out of range");
  return Monomial(std::vector<VarIndex>(word.begin() + pos, word.begin() + pos + len));
}

bool Monomial::has_prefix(const Monomial& p) const {
  return p.word.size() <= word.size() &&
         std::equal(p.word.begin(), p.word.end(), word.begin());
}

bool Monomial::has_suffix(const Monomial& s) const {
  return s.word.size() <= word.size() &&
         std::equal(s.word.rbegin(), s.word.rend(), word.rbegin());
}

std::string Monomial::to_string() const {
  if (word.empty()) return "1";
  std::string out;
  for (size_t i = 0; i < word.size(); ++i) {
    if (i) out += '*';
    out += 'x';
    out += std::to_string(word[i]);
  }
  return out;
}

std::strong_ordering deglex_compare(const Monomial& a, const Monomial& b) {
  if (a.word.size() != b.word.size())
    return a.word.size() <=> b.word.size();
  return std::lexicographical_compare_three_way(a.word.begin(), a.word.end(),
                                                b.word.begin(), b.word.end());
}

}  // namespace ncfactor

#ifndef RSNORM_CORPUS_HPP
#define RSNORM_CORPUS_HPP

#include <string>
#include <vector>

namespace rsnorm {

/// A worked example: a function on a curve and the expected verdicts. Entries without a
/// function only enumerate the singular locus.
struct CorpusEntry {
  std::string name;
  std::string curve;
  std::string num;
  std::string den;
  std::string value_at_origin;
  std::string expect_regular, expect_k_plus, expect_k_r_plus, expect_integral;
  std::string expect_relation;
};

inline const std::vector<CorpusEntry>& demo_corpus() {
  static const std::vector<CorpusEntry> c{
      {"cusp", "y^2 - x^3", "y", "x", "0", "no", "yes", "yes", "yes", "t^2 - x"},
      {"twisted", "y^2 - x^3*(x^2 + 1)^2", "y", "x*(x^2 + 1)", "0", "no", "no", "yes", "yes", "t^2 - x"},
      {"quartic", "y^4 - x*(x^2 + y^2)", "y^2", "x", "0", "no", "no", "no", "yes", "t^2 - t - x"},
      {"cubic", "y^3 - x^2*y^2 + y*x^2*(x + 1) - x^4*(x + 1)", "y", "x", "0", "no", "no", "no", "yes",
       "t^3 - x*t^2 + x*t - x^2 + t - x"},
      {"node", "y^2 - x^2*(x + 1)", "y", "x", "1", "no", "no", "no", "yes", "t^2 - x - 1"},
      {"figure", "(y^4 + x^6)*(y^2 - (x - 1)^3*(x - 2)^2*(x^2 + 1)^2*(x^2 + 4)^3)", "", "", "", "", "", "", "", ""},
  };
  return c;
}

} // namespace rsnorm

#endif // RSNORM_CORPUS_HPP

#include "mlspectra/matrix.hpp"

namespace mlspectra {

SymMatQ symmat_from_strings(int n, std::span<const std::string> entries) {
  if (n < 1) throw std::invalid_argument("symmat_from_strings: n must be >= 1");
  if (entries.size() != std::size_t(n) * n)
    throw std::invalid_argument("symmat_from_strings: expected " + std::to_string(n * n) +
                                " entries, got " + std::to_string(entries.size()));
  Matrix<Rational> a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = parse_rational(entries[std::size_t(i) * n + j]);
  return SymMatQ::from_dense(a);
}

}  // namespace mlspectra

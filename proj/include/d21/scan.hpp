#ifndef D21_SCAN_HPP
#define D21_SCAN_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "d21/cohomology.hpp"

namespace d21 {

struct ScanPoint {
  std::uint32_t p = 0;
  Residue alpha = 0;
  HighestWeight lambda;
  Character chi;
};

struct ScanRow {
  ScanPoint point;
  std::size_t h1_even = 0;
  std::size_t h1_odd = 0;
};

/// alpha in F_p minus {0, -1}, ascending.
std::vector<Residue> valid_alphas(std::uint32_t p);
/// All of F_p^3 in lexicographic order.
std::vector<HighestWeight> all_lambdas(std::uint32_t p);

/// Cartesian product ordered by (alpha, lambda, chi).
std::vector<ScanPoint> scan_points(std::uint32_t p, const std::vector<Residue>& alphas,
                                   const std::vector<HighestWeight>& lambdas,
                                   const std::vector<Character>& chis);

/// Calls fn(i) for i < n on up to `jobs` threads; each index is visited exactly once.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn);

/// Graded H1 at every point; rows come back in input order whatever `jobs` is.
std::vector<ScanRow> run_scan(const std::vector<ScanPoint>& points, std::size_t jobs);

inline constexpr const char* kScanCsvHeader =
    "p,alpha,lambda1,lambda2,lambda3,chif1,chif2,chif3,h1_even,h1_odd";
std::string scan_csv(const std::vector<ScanRow>& rows);

/// "(2p+2,2p-2,2p-2)"-style label for the four exceptional highest weights.
std::optional<std::string> offset_alias(std::uint32_t p, const HighestWeight& lambda);

/// H1_JOBS if set and positive, otherwise 1.
std::size_t default_jobs();

}  // namespace d21

#endif  // D21_SCAN_HPP

#include "d21/scan.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace d21 {

std::vector<Residue> valid_alphas(std::uint32_t p) {
  std::vector<Residue> out;
  for (Residue a = 1; a + 1 < p; ++a) out.push_back(a);
  return out;
}

std::vector<HighestWeight> all_lambdas(std::uint32_t p) {
  std::vector<HighestWeight> out;
  out.reserve(static_cast<std::size_t>(p) * p * p);
  for (Residue a = 0; a < p; ++a) {
    for (Residue b = 0; b < p; ++b) {
      for (Residue c = 0; c < p; ++c) out.push_back({{a, b, c}});
    }
  }
  return out;
}

std::vector<ScanPoint> scan_points(std::uint32_t p, const std::vector<Residue>& alphas,
                                   const std::vector<HighestWeight>& lambdas,
                                   const std::vector<Character>& chis) {
  std::vector<ScanPoint> out;
  for (auto a : alphas) {
    for (const auto& l : lambdas) {
      for (const auto& c : chis) out.push_back({p, a, l, c});
    }
  }
  return out;
}

void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<ScanRow> run_scan(const std::vector<ScanPoint>& points, std::size_t jobs) {
  std::map<std::pair<std::uint32_t, Residue>, SuperAlgebra> algebras;
  for (const auto& pt : points) {
    const auto key = std::pair{pt.p, pt.alpha};
    if (!algebras.count(key)) algebras.emplace(key, SuperAlgebra::build(pt.p, pt.alpha));
  }
  std::vector<ScanRow> rows(points.size());
  parallel_for(points.size(), jobs, [&](std::size_t i) {
    const ScanPoint& pt = points[i];
    const SuperAlgebra& A = algebras.at({pt.p, pt.alpha});
    const VermaModule M = VermaModule::build(A, pt.lambda, pt.chi, ActionScope::TargetWeights);
    const H1Result r = h1(M);
    rows[i] = {pt, r.dim_even, r.dim_odd};
  });
  return rows;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream out;
  out << kScanCsvHeader << '\n';
  for (const auto& r : rows) {
    const auto& l = r.point.lambda.lambda;
    const auto& c = r.point.chi.chi_f;
    out << r.point.p << ',' << r.point.alpha << ',' << l[0] << ',' << l[1] << ',' << l[2] << ','
        << c[0] << ',' << c[1] << ',' << c[2] << ',' << r.h1_even << ',' << r.h1_odd << '\n';
  }
  return out.str();
}

std::optional<std::string> offset_alias(std::uint32_t p, const HighestWeight& lambda) {
  const PrimeField F(p);
  struct Case {
    std::array<std::int64_t, 3> offset;
    const char* label;
  };
  static const Case cases[] = {
      {{2, -2, -2}, "(2p+2,2p-2,2p-2)"},
      {{2, -2, 0}, "(2p+2,2p-2,2p)"},
      {{2, 0, -2}, "(2p+2,2p,2p-2)"},
      {{3, -3, -3}, "(2p+3,2p-3,2p-3)"},
  };
  for (const auto& c : cases) {
    if (F.reduce(c.offset[0]) == lambda.lambda[0] && F.reduce(c.offset[1]) == lambda.lambda[1] &&
        F.reduce(c.offset[2]) == lambda.lambda[2]) {
      return std::string(c.label);
    }
  }
  return std::nullopt;
}

std::size_t default_jobs() {
  if (const char* env = std::getenv("H1_JOBS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1;
}

}  // namespace d21

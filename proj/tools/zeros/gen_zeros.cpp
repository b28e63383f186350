// Writes the first N ordinates of nontrivial zeta zeros, one per line.
//
// Z(t) is sampled at Gram points and the zeros are located block by block:
// between consecutive good Gram points g_a < g_b (those with (-1)^j Z(g_j) > 0)
// there are b - a zeros (Rosser's rule, which holds far beyond the range
// produced here). Blocks whose sign changes fall short are resampled on a
// finer grid. Brackets are refined with TOMS 748, and ordinates below
// kPolishBelow are polished on the completed Xi function in MPFR.

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rhlab/debruijn.hpp"
#include "rhlab/riemann_siegel.hpp"

namespace {

constexpr double kPolishBelow = 100.0;
constexpr int kMaxRefinement = 10;  // up to 2^10 samples per Gram interval

struct Sample {
  double t;
  double z;
};

double refine(const rhlab::zeros::RiemannSiegel& rs, double lo, double hi, double zlo, double zhi) {
  std::uintmax_t iterations = 100;
  const auto result = boost::math::tools::toms748_solve([&](double t) { return rs.z(t); }, lo, hi, zlo, zhi,
                                                        boost::math::tools::eps_tolerance<double>(50),
                                                        iterations);
  return (result.first + result.second) / 2.0;
}

// Root of Xi(t) e^{pi t / 4} near `guess`, in 40-digit arithmetic.
double polish(double guess) {
  auto f = [](double t) {
    return (rhlab::debruijn::xi_on_line(t, 40) * exp(rhlab::BigReal(M_PI * t / 4.0, 40))).to_double();
  };
  double width = 1e-7;
  double lo = guess - width, hi = guess + width;
  double flo = f(lo), fhi = f(hi);
  while (flo * fhi > 0) {
    width *= 4;
    if (width > 0.1) throw std::runtime_error("polish: lost the zero near " + std::to_string(guess));
    lo = guess - width;
    hi = guess + width;
    flo = f(lo);
    fhi = f(hi);
  }
  std::uintmax_t iterations = 100;
  const auto result = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi,
                                                        boost::math::tools::eps_tolerance<double>(52),
                                                        iterations);
  return (result.first + result.second) / 2.0;
}

std::vector<double> block_zeros(const rhlab::zeros::RiemannSiegel& rs, const std::vector<Sample>& gram,
                                std::size_t expected) {
  std::vector<Sample> samples = gram;
  for (int level = 0;; ++level) {
    std::vector<double> found;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
      const Sample& a = samples[i];
      const Sample& b = samples[i + 1];
      if (a.z == 0.0) {
        found.push_back(a.t);
      } else if ((a.z < 0) != (b.z < 0) && b.z != 0.0) {
        found.push_back(refine(rs, a.t, b.t, a.z, b.z));
      }
    }
    if (found.size() >= expected) return found;
    if (level == kMaxRefinement) {
      throw std::runtime_error("Rosser block at t = " + std::to_string(gram.front().t) + " has " +
                               std::to_string(found.size()) + " of " + std::to_string(expected) + " zeros");
    }
    std::vector<Sample> finer;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
      finer.push_back(samples[i]);
      const double mid = (samples[i].t + samples[i + 1].t) / 2.0;
      finer.push_back({mid, rs.z(mid)});
    }
    finer.push_back(samples.back());
    samples = std::move(finer);
  }
}

std::vector<double> first_zeros(std::size_t count) {
  const rhlab::zeros::RiemannSiegel rs;
  std::vector<double> zeros;
  // g_{-1} ~ 9.67 is good: Z < 0 below the first zero.
  long j = -1;
  double g = rs.gram_point(j, 9.7);
  std::vector<Sample> block{{g, rs.z(g)}};
  while (zeros.size() < count) {
    ++j;
    g = rs.gram_point(j, g + 2.0 * M_PI / std::log(g / (2.0 * M_PI)));
    const double z = rs.z(g);
    block.push_back({g, z});
    const bool good = (j % 2 == 0) ? z > 0 : z < 0;
    if (!good) continue;
    const auto found = block_zeros(rs, block, block.size() - 1);
    zeros.insert(zeros.end(), found.begin(), found.end());
    block = {block.back()};
  }
  zeros.resize(count);
  for (double& t : zeros) {
    if (t >= kPolishBelow) break;
    t = polish(t);
  }
  return zeros;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate zeta zero ordinates"};
  std::size_t count = 1000;
  std::string out;
  app.add_option("--count", count, "Number of ordinates")->check(CLI::Range(std::size_t{1}, std::size_t{2'000'000}));
  app.add_option("--out", out, "Output file (default: standard output)");
  CLI11_PARSE(app, argc, argv);

  std::vector<double> zeros;
  try {
    zeros = first_zeros(count);
  } catch (const std::exception& e) {
    std::cerr << "gen_zeros: " << e.what() << "\n";
    return 3;
  }
  std::ofstream file;
  if (!out.empty()) {
    file.open(out);
    if (!file) {
      std::cerr << "gen_zeros: cannot open " << out << "\n";
      return 2;
    }
  }
  std::ostream& os = out.empty() ? std::cout : file;
  os << "# imaginary parts of the first " << count << " nontrivial zeros of zeta\n";
  os << "# Riemann-Siegel with Gram/Rosser blocks; below " << kPolishBelow << " polished on Xi\n";
  char buf[64];
  for (double t : zeros) {
    std::snprintf(buf, sizeof buf, t < kPolishBelow ? "%.14f\n" : "%.10f\n", t);
    os << buf;
  }
  return 0;
}

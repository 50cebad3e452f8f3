#include "zkappa_mp.hpp"

#include <cstddef>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace curs::detail {

using mp50 = boost::multiprecision::cpp_bin_float_50;

double z_kappa_closed_mp(int d, double kappa, double sigma) {
    const mp50 pi = boost::math::constants::pi<mp50>();
    const mp50 sg(sigma);
    const mp50 kap(kappa);
    const mp50 omega = 2 * pow(pi, mp50(d) / 2) / boost::math::tgamma(mp50(d) / 2);

    mp50 sum = 0;
    mp50 binom = 1;  // C(d-1, j), updated incrementally
    for (int j = 0; j < d; ++j) {
        const mp50 b = (d - 1 - 2 * j) * kap * sg;
        // Phi(b)/phi(b) for the standard normal CDF and density.
        const mp50 ratio =
            (1 + boost::math::erf(b / sqrt(mp50(2)))) / 2 * sqrt(2 * pi) * exp(b * b / 2);
        sum += (j % 2 ? -binom : binom) * ratio;
        binom = binom * (d - 1 - j) / (j + 1);
    }
    const mp50 z = sg * omega / pow(2 * kap, d - 1) * sum;
    return static_cast<double>(z);
}

namespace {

// Pfaffian by expansion along the first active row; (n-1)!! products, cheap
// for the n <= 10 sizes used here.
mp50 pf_expand(const std::vector<std::vector<mp50>>& a, const std::vector<int>& idx) {
    if (idx.empty()) return mp50(1);
    mp50 sum = 0;
    int sign = 1;
    for (std::size_t k = 1; k < idx.size(); ++k) {
        std::vector<int> rest;
        rest.reserve(idx.size() - 2);
        for (std::size_t m = 1; m < idx.size(); ++m)
            if (m != k) rest.push_back(idx[m]);
        sum += sign * a[idx[0]][idx[k]] * pf_expand(a, rest);
        sign = -sign;
    }
    return sum;
}

}  // namespace

double log_pf_lambda_mp(int n, double sigma) {
    const mp50 sg(sigma);
    std::vector<std::vector<mp50>> lambda(n, std::vector<mp50>(n, mp50(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            lambda[i][j] = exp((i * i + j * j) * sg * sg / 2) * boost::math::erf((j - i) * sg / 2);

    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    const mp50 pf = pf_expand(lambda, idx);
    return static_cast<double>(log(pf));
}

}  // namespace curs::detail

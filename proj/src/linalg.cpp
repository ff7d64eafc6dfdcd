#include "planequant/linalg.hpp"

#include <algorithm>

namespace planequant {

MatX expm(const MatX& a) {
    const Eigen::Index n = a.rows();
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    const MatX scaled = a / std::ldexp(1.0, squarings);

    // 0.5^k / k! < 1e-20 well before k = 24.
    MatX term = MatX::Identity(n, n);
    MatX sum = MatX::Identity(n, n);
    for (int k = 1; k <= 24; ++k) {
        term = term * scaled / static_cast<double>(k);
        sum += term;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

}  // namespace planequant

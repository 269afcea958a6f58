#include "fneq/mips_transform.hpp"

#include <algorithm>
#include <cmath>

#include "fneq/error.hpp"
#include "fneq/vector_ops.hpp"

namespace fneq {

double max_norm(const Matrix& items) {
    if (items.rows() == 0) {
        throw InvalidInputError("max_norm: empty dataset");
    }
    double phi = 0.0;
    for (std::size_t i = 0; i < items.rows(); ++i) {
        phi = std::max(phi, l2_norm(items.row(i)));
    }
    return phi;
}

std::vector<double> augment_item(std::span<const double> x, double phi) {
    if (!(phi >= 0.0)) {
        throw DomainError("augment_item: phi must be non-negative");
    }
    double radicand = phi * phi - squared_norm(x);
    if (radicand < 0.0) {
        // The maximum-norm item sits exactly on the boundary; only rounding may push it over.
        if (radicand < -kAugmentSlack * std::max(1.0, phi * phi)) {
            throw DomainError("augment_item: item norm exceeds phi");
        }
        radicand = 0.0;
    }
    std::vector<double> z;
    z.reserve(x.size() + 1);
    z.push_back(std::sqrt(radicand));
    z.insert(z.end(), x.begin(), x.end());
    return z;
}

std::vector<double> augment_query(std::span<const double> q) {
    std::vector<double> qz;
    qz.reserve(q.size() + 1);
    qz.push_back(0.0);
    qz.insert(qz.end(), q.begin(), q.end());
    return qz;
}

Matrix augment_items(const Matrix& items) {
    const double phi = max_norm(items);
    Matrix out(items.rows(), items.cols() + 1);
    for (std::size_t i = 0; i < items.rows(); ++i) {
        auto z = augment_item(items.row(i), phi);
        std::ranges::copy(z, out.row(i).begin());
    }
    return out;
}

} // namespace fneq

#include "locq/gf.hpp"

#include <array>
#include <map>
#include <memory>
#include <mutex>

#include "locq/budget.hpp"

namespace locq {

std::uint64_t ipow_sat(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
        r *= base;
    }
    return r;
}

namespace {

struct FieldParams {
    int p, k;
    std::vector<int> poly;  // constant term first, monic of degree k
};

// One fixed irreducible polynomial per extension field, so encodings are
// stable across runs.
const std::map<int, FieldParams>& field_params() {
    static const std::map<int, FieldParams> params = {
        {2, {2, 1, {0, 1}}},
        {3, {3, 1, {0, 1}}},
        {4, {2, 2, {1, 1, 1}}},     // x^2 + x + 1
        {5, {5, 1, {0, 1}}},
        {7, {7, 1, {0, 1}}},
        {8, {2, 3, {1, 1, 0, 1}}},  // x^3 + x + 1
        {9, {3, 2, {1, 0, 1}}},     // x^2 + 1
    };
    return params;
}

std::vector<int> to_coeffs(int value, int p, int k) {
    std::vector<int> c(k, 0);
    for (int i = 0; i < k; ++i) {
        c[i] = value % p;
        value /= p;
    }
    return c;
}

int from_coeffs(const std::vector<int>& c, int p, int k) {
    int value = 0;
    for (int i = k - 1; i >= 0; --i) value = value * p + c[i];
    return value;
}

}  // namespace

bool Field::supported(int q) { return field_params().count(q) != 0; }

const Field& Field::get(int q) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<Field>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it == cache.end()) {
        if (!supported(q))
            throw ConfigError("unsupported field size q=" + std::to_string(q) +
                              " (supported: 2,3,4,5,7,8,9)");
        it = cache.emplace(q, std::unique_ptr<Field>(new Field(q))).first;
    }
    return *it->second;
}

Field::Field(int q) : q_(q) {
    const FieldParams& fp = field_params().at(q);
    p_ = fp.p;
    k_ = fp.k;
    poly_ = fp.poly;

    add_.resize(size_t(q) * q);
    mul_.resize(size_t(q) * q);
    neg_.resize(q);
    inv_.assign(q, 0);
    square_.assign(q, false);

    for (int a = 0; a < q; ++a) {
        auto ca = to_coeffs(a, p_, k_);
        for (int b = 0; b < q; ++b) {
            auto cb = to_coeffs(b, p_, k_);

            std::vector<int> sum(k_);
            for (int i = 0; i < k_; ++i) sum[i] = (ca[i] + cb[i]) % p_;
            add_[idx(Fe(a), Fe(b))] = Fe(from_coeffs(sum, p_, k_));

            // Polynomial product reduced by the monic reduction polynomial.
            std::vector<int> prod(2 * k_ - 1, 0);
            for (int i = 0; i < k_; ++i)
                for (int j = 0; j < k_; ++j)
                    prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
            for (int d = 2 * k_ - 2; d >= k_; --d) {
                int c = prod[d];
                if (c == 0) continue;
                prod[d] = 0;
                for (int i = 0; i < k_; ++i)
                    prod[d - k_ + i] = ((prod[d - k_ + i] - c * poly_[i]) % p_ + p_) % p_;
            }
            prod.resize(k_);
            mul_[idx(Fe(a), Fe(b))] = Fe(from_coeffs(prod, p_, k_));
        }
    }

    for (int a = 0; a < q; ++a) {
        auto ca = to_coeffs(a, p_, k_);
        for (int& c : ca) c = (p_ - c) % p_;
        neg_[a] = Fe(from_coeffs(ca, p_, k_));
    }
    for (int a = 1; a < q; ++a)
        for (int b = 1; b < q; ++b)
            if (mul_[idx(Fe(a), Fe(b))] == 1) inv_[a] = Fe(b);
    for (int d = 0; d < q; ++d) square_[mul_[idx(Fe(d), Fe(d))]] = true;
}

Fe Field::inv(Fe a) const {
    if (a == 0) throw InvalidArgument("inverse of zero");
    return inv_[a];
}

}  // namespace locq

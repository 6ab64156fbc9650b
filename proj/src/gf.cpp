#include "uniprior/gf.hpp"

#include <algorithm>

#include "uniprior/error.hpp"

namespace uniprior {

namespace {

// Element value <-> coefficient vector in base `prime` (value = sum c_i p^i).
std::vector<int> digits_of(int value, int prime, int degree) {
    std::vector<int> d(static_cast<std::size_t>(degree), 0);
    for (int i = 0; i < degree; ++i) {
        d[static_cast<std::size_t>(i)] = value % prime;
        value /= prime;
    }
    return d;
}

int value_of(const std::vector<int>& digits, int prime) {
    int v = 0;
    for (std::size_t i = digits.size(); i-- > 0;)
        v = v * prime + digits[i];
    return v;
}

// Polynomial product reduced modulo the monic irreducible, coefficients mod
// prime. `irreducible` lists coefficients low-to-high and has length
// degree+1.
std::vector<int> mul_mod(const std::vector<int>& a, const std::vector<int>& b, int prime,
                         const std::vector<std::uint8_t>& irreducible) {
    int degree = static_cast<int>(irreducible.size()) - 1;
    std::vector<int> prod(static_cast<std::size_t>(2 * degree - 1), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % prime;
    for (int k = 2 * degree - 2; k >= degree; --k) {
        int c = prod[static_cast<std::size_t>(k)];
        if (c == 0)
            continue;
        prod[static_cast<std::size_t>(k)] = 0;
        // x^k = -irreducible_without_leading * x^(k-degree)
        for (int i = 0; i < degree; ++i) {
            int delta = (prime - irreducible[static_cast<std::size_t>(i)] % prime) * c % prime;
            std::size_t at = static_cast<std::size_t>(k - degree + i);
            prod[at] = (prod[at] + delta) % prime;
        }
    }
    prod.resize(static_cast<std::size_t>(degree));
    return prod;
}

} // namespace

GaloisField::GaloisField(int prime, int degree, std::vector<std::uint8_t> irreducible) {
    q_ = 1;
    for (int i = 0; i < degree; ++i)
        q_ *= prime;
    add_.resize(static_cast<std::size_t>(q_) * static_cast<std::size_t>(q_));
    mul_.resize(add_.size());
    neg_.resize(static_cast<std::size_t>(q_));
    inv_.assign(static_cast<std::size_t>(q_), 0);
    for (int a = 0; a < q_; ++a) {
        std::vector<int> da = digits_of(a, prime, degree);
        std::vector<int> dn = da;
        for (int& c : dn)
            c = (prime - c) % prime;
        neg_[static_cast<std::size_t>(a)] = static_cast<std::uint8_t>(value_of(dn, prime));
        for (int b = 0; b < q_; ++b) {
            std::vector<int> db = digits_of(b, prime, degree);
            std::vector<int> ds(static_cast<std::size_t>(degree));
            for (int i = 0; i < degree; ++i)
                ds[static_cast<std::size_t>(i)] =
                    (da[static_cast<std::size_t>(i)] + db[static_cast<std::size_t>(i)]) % prime;
            add_[idx(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b))] =
                static_cast<std::uint8_t>(value_of(ds, prime));
            std::vector<int> dp = mul_mod(da, db, prime, irreducible);
            mul_[idx(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b))] =
                static_cast<std::uint8_t>(value_of(dp, prime));
        }
    }
    for (int a = 1; a < q_; ++a)
        for (int b = 1; b < q_; ++b)
            if (mul_[idx(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b))] == 1) {
                inv_[static_cast<std::size_t>(a)] = static_cast<std::uint8_t>(b);
                break;
            }
}

std::uint8_t GaloisField::inv(std::uint8_t a) const {
    if (a == 0 || a >= q_)
        throw Error(Errc::invalid_model, "no inverse for " + std::to_string(int(a)));
    return inv_[a];
}

const GaloisField& GaloisField::of(int q) {
    switch (q) {
    case 2: {
        static const GaloisField f(2, 1, {0, 1});
        return f;
    }
    case 3: {
        static const GaloisField f(3, 1, {0, 1});
        return f;
    }
    case 4: {
        static const GaloisField f(2, 2, {1, 1, 1}); // x^2 + x + 1
        return f;
    }
    case 5: {
        static const GaloisField f(5, 1, {0, 1});
        return f;
    }
    case 7: {
        static const GaloisField f(7, 1, {0, 1});
        return f;
    }
    case 8: {
        static const GaloisField f(2, 3, {1, 1, 0, 1}); // x^3 + x + 1
        return f;
    }
    default:
        throw Error(Errc::unsupported_field,
                    "field size " + std::to_string(q) + " not supported (use 2,3,4,5,7,8)");
    }
}

GFMatrix::GFMatrix(const GaloisField& field, int rows, int cols)
    : field_(&field), rows_(rows), cols_(cols),
      data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0) {}

std::span<const std::uint8_t> GFMatrix::row(int r) const {
    return {data_.data() + pos(r, 0), static_cast<std::size_t>(cols_)};
}

void GFMatrix::append_row(std::span<const std::uint8_t> values) {
    if (static_cast<int>(values.size()) != cols_)
        throw Error(Errc::dimension_mismatch, "row width mismatch");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
}

int GFMatrix::rank() const {
    const GaloisField& f = *field_;
    std::vector<std::uint8_t> m(data_);
    auto at = [&](int r, int c) -> std::uint8_t& { return m[pos(r, c)]; };
    int rank = 0;
    for (int col = 0; col < cols_ && rank < rows_; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows_; ++r)
            if (at(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0)
            continue;
        for (int c = 0; c < cols_; ++c)
            std::swap(at(rank, c), at(pivot, c));
        std::uint8_t scale = f.inv(at(rank, col));
        for (int c = 0; c < cols_; ++c)
            at(rank, c) = f.mul(at(rank, c), scale);
        for (int r = 0; r < rows_; ++r) {
            if (r == rank || at(r, col) == 0)
                continue;
            std::uint8_t factor = at(r, col);
            for (int c = 0; c < cols_; ++c)
                at(r, c) = f.sub(at(r, c), f.mul(factor, at(rank, c)));
        }
        ++rank;
    }
    return rank;
}

bool GFMatrix::in_row_span(std::span<const std::uint8_t> v) const {
    if (static_cast<int>(v.size()) != cols_)
        throw Error(Errc::dimension_mismatch, "vector width mismatch");
    GFMatrix extended(*this);
    extended.append_row(v);
    return extended.rank() == rank();
}

} // namespace uniprior

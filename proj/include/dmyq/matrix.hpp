#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "rational.hpp"

namespace dmyq {

template <class T>
struct Vec2 {
    T x{};
    T y{};

    friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
};

/// Row-major 2x2 matrix: m[row][col].
template <class T>
struct Mat2 {
    std::array<std::array<T, 2>, 2> m{};

    static Mat2 identity() {
        Mat2 r;
        r.m[0][0] = T(1);
        r.m[0][1] = T(0);
        r.m[1][0] = T(0);
        r.m[1][1] = T(1);
        return r;
    }

    static Mat2 from(T a00, T a01, T a10, T a11) {
        Mat2 r;
        r.m[0][0] = std::move(a00);
        r.m[0][1] = std::move(a01);
        r.m[1][0] = std::move(a10);
        r.m[1][1] = std::move(a11);
        return r;
    }

    const T& operator()(int r, int c) const { return m[r][c]; }
    T& operator()(int r, int c) { return m[r][c]; }

    [[nodiscard]] T trace() const { return m[0][0] + m[1][1]; }
    [[nodiscard]] T det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

    /// Classical adjugate; adj(A) * A = det(A) * I.
    [[nodiscard]] Mat2 adjugate() const { return from(m[1][1], -m[0][1], -m[1][0], m[0][0]); }
    [[nodiscard]] Mat2 transpose() const { return from(m[0][0], m[1][0], m[0][1], m[1][1]); }

    [[nodiscard]] Mat2 inverse() const {
        T d = det();
        if (d == T(0)) throw std::domain_error("Mat2::inverse: singular matrix");
        Mat2 a = adjugate();
        for (auto& row : a.m)
            for (auto& v : row) v = v / d;
        return a;
    }

    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j];
        return r;
    }

    friend Vec2<T> operator*(const Mat2& a, const Vec2<T>& v) {
        return {a.m[0][0] * v.x + a.m[0][1] * v.y, a.m[1][0] * v.x + a.m[1][1] * v.y};
    }

    friend bool operator==(const Mat2& a, const Mat2& b) { return a.m == b.m; }
};

using RatMat = Mat2<Rat>;
using RatVec = Vec2<Rat>;
using FloatMat = Mat2<double>;

inline FloatMat to_float(const RatMat& a) {
    return FloatMat::from(a(0, 0).get_d(), a(0, 1).get_d(), a(1, 0).get_d(), a(1, 1).get_d());
}

inline FloatMat rotation_matrix(double theta) {
    return FloatMat::from(std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta));
}

/// Reflection across the line through the origin at angle phi:
/// acts on z = x + iy as z -> e^{2 i phi} conj(z).
inline FloatMat reflection_matrix(double phi) {
    double c = std::cos(2 * phi), s = std::sin(2 * phi);
    return FloatMat::from(c, s, s, -c);
}

}  // namespace dmyq

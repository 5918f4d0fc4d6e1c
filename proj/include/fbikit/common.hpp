#pragma once
// Small fixed-dimension vector/covector types (N = 1 or 2), multi-indices,
// and deterministic hashing / RNG helpers shared across the toolkit.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fbikit {

inline constexpr int kMaxDim = 2;
inline constexpr const char* kVersion = "fbikit 0.1.0";

using Complex = std::complex<double>;

struct Vec {
    int n = 1;
    std::array<double, kMaxDim> v{0.0, 0.0};

    Vec() = default;
    explicit Vec(double x) : n(1), v{x, 0.0} {}
    Vec(double x, double y) : n(2), v{x, y} {}
    static Vec zero(int dim) { Vec p; p.n = dim; return p; }
    double& operator[](int i) { return v[static_cast<size_t>(i)]; }
    double operator[](int i) const { return v[static_cast<size_t>(i)]; }
};

struct CVec {
    int n = 1;
    std::array<Complex, kMaxDim> v{Complex(0.0), Complex(0.0)};

    CVec() = default;
    explicit CVec(Complex x) : n(1), v{x, Complex(0.0)} {}
    CVec(Complex x, Complex y) : n(2), v{x, y} {}
    static CVec zero(int dim) { CVec p; p.n = dim; return p; }
    static CVec from_real(const Vec& r) {
        CVec p; p.n = r.n;
        for (int i = 0; i < r.n; ++i) p.v[static_cast<size_t>(i)] = Complex(r[i]);
        return p;
    }
    Complex& operator[](int i) { return v[static_cast<size_t>(i)]; }
    Complex operator[](int i) const { return v[static_cast<size_t>(i)]; }
    Vec real() const {
        Vec r; r.n = n;
        for (int i = 0; i < n; ++i) r[i] = v[static_cast<size_t>(i)].real();
        return r;
    }
    Vec imag() const {
        Vec r; r.n = n;
        for (int i = 0; i < n; ++i) r[i] = v[static_cast<size_t>(i)].imag();
        return r;
    }
};

inline Vec operator+(const Vec& a, const Vec& b) {
    Vec r = a;
    for (int i = 0; i < a.n; ++i) r[i] += b[i];
    return r;
}
inline Vec operator-(const Vec& a, const Vec& b) {
    Vec r = a;
    for (int i = 0; i < a.n; ++i) r[i] -= b[i];
    return r;
}
inline Vec operator*(double s, const Vec& a) {
    Vec r = a;
    for (int i = 0; i < a.n; ++i) r[i] *= s;
    return r;
}
inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (int i = 0; i < a.n; ++i) s += a[i] * b[i];
    return s;
}
inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline CVec operator+(const CVec& a, const CVec& b) {
    CVec r = a;
    for (int i = 0; i < a.n; ++i) r[i] += b[i];
    return r;
}
inline CVec operator-(const CVec& a, const CVec& b) {
    CVec r = a;
    for (int i = 0; i < a.n; ++i) r[i] -= b[i];
    return r;
}
inline CVec operator*(Complex s, const CVec& a) {
    CVec r = a;
    for (int i = 0; i < a.n; ++i) r[i] *= s;
    return r;
}
// Bilinear (not Hermitian) pairing: sum a_i b_i.
inline Complex cdot(const CVec& a, const CVec& b) {
    Complex s(0.0);
    for (int i = 0; i < a.n; ++i) s += a[i] * b[i];
    return s;
}

struct MultiIndex {
    int n = 1;
    std::array<int, kMaxDim> a{0, 0};

    MultiIndex() = default;
    explicit MultiIndex(int a0) : n(1), a{a0, 0} {}
    MultiIndex(int a0, int a1) : n(2), a{a0, a1} {}
    int order() const {
        int s = 0;
        for (int i = 0; i < n; ++i) s += a[static_cast<size_t>(i)];
        return s;
    }
    int operator[](int i) const { return a[static_cast<size_t>(i)]; }
    int& operator[](int i) { return a[static_cast<size_t>(i)]; }
    bool operator==(const MultiIndex& o) const { return n == o.n && a == o.a; }
};

// Axis-aligned closed box; degenerate intervals [c,c] are allowed.
struct Box {
    int n = 1;
    std::array<double, kMaxDim> lo{0.0, 0.0};
    std::array<double, kMaxDim> hi{0.0, 0.0};

    static Box interval(double a, double b) {
        Box k; k.n = 1; k.lo[0] = a; k.hi[0] = b;
        return k;
    }
    static Box rect(double ax, double bx, double ay, double by) {
        Box k; k.n = 2; k.lo = {ax, ay}; k.hi = {bx, by};
        return k;
    }
    Box dilated(double delta) const {
        Box k = *this;
        for (int i = 0; i < n; ++i) { k.lo[static_cast<size_t>(i)] -= delta; k.hi[static_cast<size_t>(i)] += delta; }
        return k;
    }
    bool contains(const Vec& x, double slack = 0.0) const {
        for (int i = 0; i < n; ++i)
            if (x[i] < lo[static_cast<size_t>(i)] - slack || x[i] > hi[static_cast<size_t>(i)] + slack) return false;
        return true;
    }
    double distance(const Vec& x) const {
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            double d = 0.0;
            if (x[i] < lo[static_cast<size_t>(i)]) d = lo[static_cast<size_t>(i)] - x[i];
            else if (x[i] > hi[static_cast<size_t>(i)]) d = x[i] - hi[static_cast<size_t>(i)];
            s += d * d;
        }
        return std::sqrt(s);
    }
    double diameter() const {
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            double d = hi[static_cast<size_t>(i)] - lo[static_cast<size_t>(i)];
            s += d * d;
        }
        return std::sqrt(s);
    }
};

// FNV-1a, used to stamp reports with a hash of the raw config text.
inline std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= static_cast<std::uint64_t>(c);
        h *= 1099511628211ull;
    }
    return h;
}

// splitmix64: portable deterministic RNG (library verdicts must not depend on
// the platform's distribution implementations).
struct SplitMix64 {
    std::uint64_t state = 0;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform01(); }
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace fbikit

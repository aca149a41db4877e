// Exact rational numbers on 64-bit numerator/denominator with 128-bit
// intermediates. Every operation normalizes; overflow of the normalized
// result throws std::overflow_error instead of wrapping.
#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tritrop {

class Rational {
  public:
    constexpr Rational() noexcept = default;
    constexpr Rational(std::int64_t value) noexcept : num_(value) {} // NOLINT(implicit)
    Rational(std::int64_t num, std::int64_t den) { assign(num, den); }

    [[nodiscard]] constexpr std::int64_t num() const noexcept { return num_; }
    [[nodiscard]] constexpr std::int64_t den() const noexcept { return den_; }

    [[nodiscard]] constexpr bool is_zero() const noexcept { return num_ == 0; }
    [[nodiscard]] constexpr bool is_integer() const noexcept { return den_ == 1; }
    [[nodiscard]] constexpr int sign() const noexcept { return (num_ > 0) - (num_ < 0); }
    [[nodiscard]] double to_double() const noexcept {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    /// Largest integer not above the value.
    [[nodiscard]] std::int64_t floor() const noexcept {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (a.den_ == b.den_) return from_wide(wide(a.num_) + b.num_, a.den_);
        return from_wide(wide(a.num_) * b.den_ + wide(b.num_) * a.den_, wide(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        if (a.den_ == b.den_) return from_wide(wide(a.num_) - b.num_, a.den_);
        return from_wide(wide(a.num_) * b.den_ - wide(b.num_) * a.den_, wide(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_wide(wide(a.num_) * b.num_, wide(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return from_wide(wide(a.num_) * b.den_, wide(a.den_) * b.num_);
    }
    Rational operator-() const {
        if (num_ == INT64_MIN) throw std::overflow_error("rational overflow");
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
        if (a.den_ == b.den_) return a.num_ <=> b.num_;
        const wide lhs = wide(a.num_) * b.den_;
        const wide rhs = wide(b.num_) * a.den_;
        return lhs < rhs ? std::strong_ordering::less
                         : (lhs > rhs ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    /// Parses "p/q" or "p". Throws std::invalid_argument with a short reason.
    static Rational parse(std::string_view text) {
        const auto slash = text.find('/');
        const auto parse_int = [](std::string_view s) -> std::int64_t {
            if (s.empty()) throw std::invalid_argument("empty number");
            std::size_t pos = 0;
            bool neg = false;
            if (s[0] == '+' || s[0] == '-') {
                neg = s[0] == '-';
                pos = 1;
            }
            if (pos == s.size()) throw std::invalid_argument("malformed number");
            std::int64_t value = 0;
            for (; pos < s.size(); ++pos) {
                const char ch = s[pos];
                if (ch < '0' || ch > '9') throw std::invalid_argument("malformed number");
                if (__builtin_mul_overflow(value, 10, &value) ||
                    __builtin_add_overflow(value, ch - '0', &value)) {
                    throw std::invalid_argument("number out of range");
                }
            }
            return neg ? -value : value;
        };
        if (slash == std::string_view::npos) return Rational(parse_int(text));
        const std::int64_t n = parse_int(text.substr(0, slash));
        const std::int64_t d = parse_int(text.substr(slash + 1));
        if (d == 0) throw std::invalid_argument("zero denominator");
        return Rational(n, d);
    }

    /// Always "num/den", so parse(str()) round-trips bit for bit.
    [[nodiscard]] std::string str() const {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }
    /// Compact form: "num" for integers.
    [[nodiscard]] std::string pretty() const {
        return den_ == 1 ? std::to_string(num_) : str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.pretty(); }

  private:
    using wide = __int128;

    static wide gcd_wide(wide a, wide b) noexcept {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            const wide t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static Rational from_wide(wide n, wide d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const wide g = gcd_wide(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        if (n > INT64_MAX || n < -INT64_MAX || d > INT64_MAX) throw std::overflow_error("rational overflow");
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(n == 0 ? 1 : d);
        return r;
    }

    void assign(std::int64_t n, std::int64_t d) {
        if (d == 0) throw std::domain_error("zero denominator");
        *this = from_wide(n, d);
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

struct RationalHash {
    std::size_t operator()(const Rational& r) const noexcept {
        const auto h1 = std::hash<std::int64_t>{}(r.num());
        const auto h2 = std::hash<std::int64_t>{}(r.den());
        return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
    }
};

/// Element a + b·ε of Q[ε]/(ε²), ordered lexicographically. Used to resolve
/// degenerate positions under an infinitesimal perturbation.
struct DualRational {
    Rational real;
    Rational eps;

    friend DualRational operator+(const DualRational& a, const DualRational& b) {
        return {a.real + b.real, a.eps + b.eps};
    }
    friend DualRational operator-(const DualRational& a, const DualRational& b) {
        return {a.real - b.real, a.eps - b.eps};
    }
    friend DualRational operator*(const DualRational& a, const Rational& s) { return {a.real * s, a.eps * s}; }
    friend DualRational operator/(const DualRational& a, const Rational& s) { return {a.real / s, a.eps / s}; }
    friend bool operator==(const DualRational&, const DualRational&) = default;
    friend std::strong_ordering operator<=>(const DualRational& a, const DualRational& b) {
        if (auto c = a.real <=> b.real; c != 0) return c;
        return a.eps <=> b.eps;
    }
    [[nodiscard]] int sign() const { return real.sign() != 0 ? real.sign() : eps.sign(); }
};

} // namespace tritrop

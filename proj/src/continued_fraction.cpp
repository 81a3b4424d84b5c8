#include "denjoy/continued_fraction.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "denjoy/errors.hpp"

namespace denjoy {

namespace {

using Quotient = ContinuedFraction::Quotient;

// Shortest block whose repetition gives `tail`.
std::vector<Quotient> primitive_period(const std::vector<Quotient>& tail) {
    const std::size_t n = tail.size();
    for (std::size_t len = 1; len < n; ++len) {
        if (n % len != 0) continue;
        bool repeats = true;
        for (std::size_t i = len; i < n && repeats; ++i) repeats = tail[i] == tail[i - len];
        if (repeats) return {tail.begin(), tail.begin() + static_cast<std::ptrdiff_t>(len)};
    }
    return tail;
}

}  // namespace

ContinuedFraction::ContinuedFraction(std::vector<Quotient> prefix, std::vector<Quotient> periodic_tail)
    : prefix_(std::move(prefix)), tail_(std::move(periodic_tail)) {
    if (prefix_.empty() && tail_.empty()) {
        throw std::invalid_argument("continued fraction needs at least one partial quotient");
    }
    auto positive = [](Quotient a) { return a >= 1; };
    if (!std::all_of(prefix_.begin(), prefix_.end(), positive) ||
        !std::all_of(tail_.begin(), tail_.end(), positive)) {
        throw std::invalid_argument("partial quotients must be >= 1");
    }
    if (tail_.empty()) return;

    tail_ = primitive_period(tail_);
    // [.., x, (.., x)] == [.., (x, ..)]: absorb the prefix into the period.
    while (!prefix_.empty() && prefix_.back() == tail_.back()) {
        prefix_.pop_back();
        std::rotate(tail_.rbegin(), tail_.rbegin() + 1, tail_.rend());
    }
}

ContinuedFraction ContinuedFraction::periodic(std::vector<Quotient> prefix, std::vector<Quotient> tail) {
    if (tail.empty()) throw std::invalid_argument("periodic continued fraction needs a nonempty tail");
    return ContinuedFraction(std::move(prefix), std::move(tail));
}

ContinuedFraction ContinuedFraction::stream(std::vector<Quotient> prefix) {
    return ContinuedFraction(std::move(prefix), {});
}

std::optional<Quotient> ContinuedFraction::quotient(std::size_t i) const {
    if (i == 0) throw std::invalid_argument("partial quotients are indexed from 1");
    if (i <= prefix_.size()) return prefix_[i - 1];
    if (tail_.empty()) return std::nullopt;
    return tail_[(i - 1 - prefix_.size()) % tail_.size()];
}

std::optional<std::size_t> ContinuedFraction::known_length() const {
    if (is_quadratic()) return std::nullopt;
    return prefix_.size();
}

std::vector<Quotient> ContinuedFraction::canonical_tail() const {
    if (tail_.empty()) return {};
    return least_rotation(tail_);
}

std::string ContinuedFraction::to_string() const {
    std::ostringstream os;
    os << "[0; ";
    for (std::size_t i = 0; i < prefix_.size(); ++i) {
        if (i > 0) os << ", ";
        os << prefix_[i];
    }
    if (!tail_.empty()) {
        if (!prefix_.empty()) os << ", ";
        os << '(';
        for (std::size_t i = 0; i < tail_.size(); ++i) {
            if (i > 0) os << ", ";
            os << tail_[i];
        }
        os << ')';
    }
    os << ']';
    return os.str();
}

std::vector<Quotient> least_rotation(const std::vector<Quotient>& block) {
    const std::size_t n = block.size();
    if (n == 0) return {};
    // Booth's algorithm over the doubled block.
    std::vector<long> fail(2 * n, -1);
    std::size_t k = 0;
    auto at = [&](std::size_t i) { return block[i % n]; };
    for (std::size_t j = 1; j < 2 * n; ++j) {
        long i = fail[j - k - 1];
        while (i != -1 && at(j) != at(k + static_cast<std::size_t>(i) + 1)) {
            if (at(j) < at(k + static_cast<std::size_t>(i) + 1)) k = j - static_cast<std::size_t>(i) - 1;
            i = fail[static_cast<std::size_t>(i)];
        }
        if (i == -1 && at(j) != at(k)) {
            if (at(j) < at(k)) k = j;
            fail[j - k] = -1;
        } else {
            fail[j - k] = i + 1;
        }
    }
    std::vector<Quotient> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = at(k + i);
    return out;
}

namespace {

class CfParser {
public:
    explicit CfParser(std::string_view text) : text_(text) {}

    ContinuedFraction parse() {
        expect('[');
        if (read_integer() != 0) fail("integer part must be 0 (values lie in (0,1))");
        expect(';');
        std::vector<Quotient> prefix;
        std::vector<Quotient> tail;
        skip_space();
        if (peek() != ']') {
            while (true) {
                skip_space();
                if (peek() == '(') {
                    ++pos_;
                    tail.push_back(read_integer());
                    while (skip_space(), peek() == ',') {
                        ++pos_;
                        tail.push_back(read_integer());
                    }
                    expect(')');
                    break;
                }
                prefix.push_back(read_integer());
                skip_space();
                if (peek() != ',') break;
                ++pos_;
            }
        }
        expect(']');
        skip_space();
        if (pos_ != text_.size()) fail("trailing characters");
        if (prefix.empty() && tail.empty()) fail("no partial quotients");
        try {
            return ContinuedFraction(std::move(prefix), std::move(tail));
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("cannot parse continued fraction '" + std::string(text_) + "': " + why);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void expect(char c) {
        skip_space();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    Quotient read_integer() {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a nonnegative integer");
        if (pos_ - start > 18) fail("partial quotient too large");
        return std::stoull(std::string(text_.substr(start, pos_ - start)));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

Quotient require_quotient(const ContinuedFraction& cf, std::size_t i) {
    auto a = cf.quotient(i);
    if (!a) {
        throw DepthExhaustedError("continued fraction " + cf.to_string() + " has no partial quotient a_" +
                                  std::to_string(i));
    }
    return *a;
}

}  // namespace

ContinuedFraction parse_continued_fraction(std::string_view text) { return CfParser(text).parse(); }

std::vector<Rational> convergents(const ContinuedFraction& cf, std::size_t k) {
    if (k == 0) throw std::invalid_argument("convergents: k must be >= 1");
    std::vector<Rational> out;
    out.reserve(k);
    // (p_{-1}, q_{-1}) = (1, 0), (p_0, q_0) = (a_0, 1) = (0, 1).
    BigInt p_prev = 1, q_prev = 0, p = 0, q = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        BigInt a = static_cast<unsigned long>(require_quotient(cf, i));
        BigInt p_next = a * p + p_prev;
        BigInt q_next = a * q + q_prev;
        p_prev = std::move(p);
        q_prev = std::move(q);
        p = std::move(p_next);
        q = std::move(q_next);
        out.push_back(make_rational(p, q));
    }
    return out;
}

CertifiedValue eval(const ContinuedFraction& cf, const Rational& eps) {
    if (eps <= 0) throw std::invalid_argument("eval: eps must be positive");
    if (eps >= Rational(1, 2)) return CertifiedValue(Rational(1, 2), Rational(1, 2));

    // Invariant: the value lies strictly between p_prev/q_prev and p/q.
    BigInt p_prev = 0, q_prev = 1;  // p_0/q_0
    BigInt a1 = static_cast<unsigned long>(require_quotient(cf, 1));
    BigInt p = 1, q = a1;           // p_1/q_1
    for (std::size_t i = 2;; ++i) {
        // |p/q - p_prev/q_prev| = 1/(q q_prev)
        Rational radius = make_rational(BigInt(1), BigInt(2 * q * q_prev));
        if (radius <= eps) {
            Rational lo = make_rational(p_prev, q_prev);
            Rational hi = make_rational(p, q);
            if (hi < lo) std::swap(lo, hi);
            return CertifiedValue::from_bounds(lo, hi);
        }
        BigInt a = static_cast<unsigned long>(require_quotient(cf, i));
        BigInt p_next = a * p + p_prev;
        BigInt q_next = a * q + q_prev;
        p_prev = std::move(p);
        q_prev = std::move(q);
        p = std::move(p_next);
        q = std::move(q_next);
    }
}

CertifiedValue frac_shifted_multiple(const ContinuedFraction& cf, const Rational& shift, const BigInt& n,
                                     const Rational& eps) {
    if (eps <= 0) throw std::invalid_argument("frac_multiple: eps must be positive");
    if (n == 0) {
        Rational v = shift - Rational(denjoy::floor(shift));
        return CertifiedValue::exact(std::move(v));
    }
    const BigInt abs_n = n < 0 ? BigInt(-n) : n;
    Rational working = eps / abs_n;
    for (int attempt = 0; attempt < 64; ++attempt) {
        CertifiedValue alpha = eval(cf, working);
        CertifiedValue y = alpha.scaled(Rational(n)) + shift;
        BigInt fl = denjoy::floor(y.lower());
        if (denjoy::floor(y.upper()) == fl) {
            // The value is irrational, so it cannot sit on the integer fl.
            return y - Rational(fl);
        }
        // The enclosure straddles an integer; tighten and retry.
        working /= BigInt(1) << 32;
    }
    throw UndecidableComparisonError("frac_multiple: could not separate {shift + n alpha} from an integer");
}

CertifiedValue frac_multiple(const ContinuedFraction& cf, const BigInt& n, const Rational& eps) {
    return frac_shifted_multiple(cf, Rational(0), n, eps);
}

Rational separation_lower_bound(const ContinuedFraction& cf, std::uint64_t N) {
    if (N == 0) throw std::invalid_argument("separation_lower_bound: N must be >= 1");
    const BigInt limit = static_cast<unsigned long>(N);
    BigInt q_prev = 1;                                                   // q_0
    BigInt q = static_cast<unsigned long>(require_quotient(cf, 1));      // q_1
    for (std::size_t i = 2; q <= limit; ++i) {
        BigInt a = static_cast<unsigned long>(require_quotient(cf, i));
        BigInt q_next = a * q + q_prev;
        q_prev = std::move(q);
        q = std::move(q_next);
    }
    // q_prev <= N < q.
    return make_rational(BigInt(1), BigInt(q_prev + q));
}

}  // namespace denjoy

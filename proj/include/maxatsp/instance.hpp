#pragma once

// Complete directed graphs with exact nonnegative weights, tours, and the
// plain-text instance format.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace maxatsp {

/// Edge weight as a scaled integer: the decimal value times 10^decimals of the
/// owning instance.
using Weight = std::int64_t;

/// Exact weight that may carry half a unit (half-edges weigh w/2). Stored
/// doubled so every comparison stays integral.
struct HalfWeight {
    Weight doubled = 0;

    static constexpr HalfWeight whole(Weight w) { return HalfWeight{2 * w}; }
    static constexpr HalfWeight half(Weight w) { return HalfWeight{w}; }

    constexpr HalfWeight& operator+=(HalfWeight o) {
        doubled += o.doubled;
        return *this;
    }
    constexpr HalfWeight& operator-=(HalfWeight o) {
        doubled -= o.doubled;
        return *this;
    }
    friend constexpr HalfWeight operator+(HalfWeight a, HalfWeight b) { return a += b; }
    friend constexpr HalfWeight operator-(HalfWeight a, HalfWeight b) { return a -= b; }
    friend constexpr auto operator<=>(HalfWeight, HalfWeight) = default;
    friend constexpr bool operator==(HalfWeight, HalfWeight) = default;

    [[nodiscard]] constexpr bool is_whole() const { return doubled % 2 == 0; }
};

enum class InstanceErrorKind {
    MissingHeader,
    BadVertexCount,
    RowCount,
    ColumnCount,
    NonNumeric,
    NegativeWeight,
    NonZeroDiagonal,
    Overflow,
};

class InstanceError : public std::runtime_error {
public:
    InstanceError(InstanceErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    [[nodiscard]] InstanceErrorKind kind() const { return kind_; }

private:
    InstanceErrorKind kind_;
};

/// Complete directed graph on vertices 0..n-1. Immutable once built.
class Instance {
public:
    Instance() = default;

    /// `weights` is row-major n*n in scaled units; the diagonal must be zero.
    Instance(int n, std::vector<Weight> weights, int decimals = 0)
        : n_(n), decimals_(decimals), w_(std::move(weights)) {
        if (n_ < 2) {
            throw InstanceError(InstanceErrorKind::BadVertexCount,
                                "instance needs at least 2 vertices, got " + std::to_string(n_));
        }
        if (w_.size() != static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_)) {
            throw InstanceError(InstanceErrorKind::RowCount, "weight matrix has wrong size");
        }
        if (decimals_ < 0 || decimals_ > 9) {
            throw InstanceError(InstanceErrorKind::Overflow, "unsupported decimal precision");
        }
        for (int u = 0; u < n_; ++u) {
            for (int v = 0; v < n_; ++v) {
                const Weight x = w_[index(u, v)];
                if (u == v && x != 0) {
                    throw InstanceError(InstanceErrorKind::NonZeroDiagonal,
                                        "diagonal entry " + std::to_string(u) + " is not zero");
                }
                if (x < 0) {
                    throw InstanceError(InstanceErrorKind::NegativeWeight,
                                        "negative weight at (" + std::to_string(u) + "," +
                                            std::to_string(v) + ")");
                }
                // Keeps n * max weight (and doubled half-edge sums) far from overflow.
                if (x > (Weight{1} << 40)) {
                    throw InstanceError(InstanceErrorKind::Overflow, "weight too large");
                }
            }
        }
    }

    /// Convenience constructor from a dense matrix of whole-unit weights.
    static Instance from_rows(const std::vector<std::vector<Weight>>& rows) {
        const int n = static_cast<int>(rows.size());
        std::vector<Weight> flat;
        flat.reserve(rows.size() * rows.size());
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != n) {
                throw InstanceError(InstanceErrorKind::ColumnCount, "matrix is not square");
            }
            flat.insert(flat.end(), row.begin(), row.end());
        }
        return Instance(n, std::move(flat), 0);
    }

    [[nodiscard]] int size() const { return n_; }
    [[nodiscard]] int decimals() const { return decimals_; }
    [[nodiscard]] Weight weight(int u, int v) const { return w_[index(u, v)]; }
    [[nodiscard]] const std::vector<Weight>& weights() const { return w_; }

    [[nodiscard]] Weight max_weight() const {
        return w_.empty() ? 0 : *std::max_element(w_.begin(), w_.end());
    }

    friend bool operator==(const Instance&, const Instance&) = default;

private:
    [[nodiscard]] std::size_t index(int u, int v) const {
        return static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) +
               static_cast<std::size_t>(v);
    }

    int n_ = 0;
    int decimals_ = 0;
    std::vector<Weight> w_;
};

/// A Hamiltonian cycle given as a cyclic vertex order.
struct Tour {
    std::vector<int> order;
    friend bool operator==(const Tour&, const Tour&) = default;
};

namespace detail {

struct ParsedNumber {
    Weight digits = 0;  // value * 10^frac_digits
    int frac_digits = 0;
};

inline ParsedNumber parse_number(std::string_view tok) {
    if (tok.empty()) {
        throw InstanceError(InstanceErrorKind::NonNumeric, "empty token");
    }
    if (tok.front() == '-') {
        // Validate it is a number at all before reporting the sign.
        ParsedNumber p = parse_number(tok.substr(1));
        if (p.digits != 0) {
            throw InstanceError(InstanceErrorKind::NegativeWeight,
                                "negative weight '" + std::string(tok) + "'");
        }
        return p;
    }
    if (tok.front() == '+') tok.remove_prefix(1);
    ParsedNumber p;
    bool seen_dot = false;
    bool seen_digit = false;
    for (char ch : tok) {
        if (ch == '.') {
            if (seen_dot) {
                throw InstanceError(InstanceErrorKind::NonNumeric,
                                    "malformed number '" + std::string(tok) + "'");
            }
            seen_dot = true;
            continue;
        }
        if (ch < '0' || ch > '9') {
            throw InstanceError(InstanceErrorKind::NonNumeric,
                                "non-numeric token '" + std::string(tok) + "'");
        }
        seen_digit = true;
        if (p.digits > (std::numeric_limits<Weight>::max() - 9) / 10) {
            throw InstanceError(InstanceErrorKind::Overflow, "number too long");
        }
        p.digits = p.digits * 10 + (ch - '0');
        if (seen_dot) ++p.frac_digits;
    }
    if (!seen_digit) {
        throw InstanceError(InstanceErrorKind::NonNumeric,
                            "non-numeric token '" + std::string(tok) + "'");
    }
    return p;
}

inline Weight pow10(int e) {
    Weight r = 1;
    for (int i = 0; i < e; ++i) r *= 10;
    return r;
}

}  // namespace detail

/// Parses the instance text format: first line n, then n rows of n numbers.
/// Decimal inputs are scaled by a common power of ten so weights stay exact.
inline Instance load_instance(std::string_view text) {
    std::vector<std::vector<std::string>> lines;
    {
        std::istringstream in{std::string(text)};
        std::string line;
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            std::vector<std::string> toks;
            std::string tok;
            while (ls >> tok) toks.push_back(tok);
            if (!toks.empty()) lines.push_back(std::move(toks));
        }
    }
    if (lines.empty()) {
        throw InstanceError(InstanceErrorKind::MissingHeader, "empty instance text");
    }
    if (lines[0].size() != 1) {
        throw InstanceError(InstanceErrorKind::MissingHeader,
                            "first line must hold only the vertex count");
    }
    const auto header = detail::parse_number(lines[0][0]);
    if (header.frac_digits != 0 || header.digits < 2 || header.digits > 100000) {
        throw InstanceError(InstanceErrorKind::BadVertexCount,
                            "vertex count must be an integer >= 2");
    }
    const int n = static_cast<int>(header.digits);
    if (static_cast<int>(lines.size()) - 1 != n) {
        throw InstanceError(InstanceErrorKind::RowCount,
                            "expected " + std::to_string(n) + " rows, found " +
                                std::to_string(lines.size() - 1));
    }
    std::vector<detail::ParsedNumber> nums;
    nums.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    int decimals = 0;
    for (int r = 0; r < n; ++r) {
        const auto& row = lines[static_cast<std::size_t>(r) + 1];
        if (static_cast<int>(row.size()) != n) {
            throw InstanceError(InstanceErrorKind::ColumnCount,
                                "row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                                    " entries, expected " + std::to_string(n));
        }
        for (const auto& tok : row) {
            nums.push_back(detail::parse_number(tok));
            decimals = std::max(decimals, nums.back().frac_digits);
        }
    }
    if (decimals > 9) {
        throw InstanceError(InstanceErrorKind::Overflow, "more than 9 decimal places");
    }
    std::vector<Weight> w;
    w.reserve(nums.size());
    for (const auto& p : nums) {
        const Weight scale = detail::pow10(decimals - p.frac_digits);
        if (p.digits > (Weight{1} << 40) / scale) {
            throw InstanceError(InstanceErrorKind::Overflow, "weight too large");
        }
        w.push_back(p.digits * scale);
    }
    return Instance(n, std::move(w), decimals);
}

/// Formats a scaled weight with the instance's decimal places.
inline std::string format_weight(Weight w, int decimals) {
    const bool neg = w < 0;
    const Weight a = neg ? -w : w;
    std::string s = std::to_string(a);
    if (decimals > 0) {
        if (static_cast<int>(s.size()) <= decimals) {
            s.insert(0, static_cast<std::size_t>(decimals + 1) - s.size(), '0');
        }
        s.insert(s.size() - static_cast<std::size_t>(decimals), ".");
    }
    return neg ? "-" + s : s;
}

/// Formats a half-unit weight; prints an extra ".5" digit when needed.
inline std::string format_weight(HalfWeight w, int decimals) {
    if (w.is_whole()) return format_weight(w.doubled / 2, decimals);
    // One more decimal place: doubled * 10^(d+1) / 2 / 10^(d+1) = doubled*5 at d+1.
    return format_weight(w.doubled * 5, decimals + 1);
}

inline std::string render_instance(const Instance& inst) {
    std::string out = std::to_string(inst.size()) + "\n";
    for (int u = 0; u < inst.size(); ++u) {
        for (int v = 0; v < inst.size(); ++v) {
            if (v) out += ' ';
            out += format_weight(inst.weight(u, v), inst.decimals());
        }
        out += '\n';
    }
    return out;
}

/// Uniform integer weights in [0, max_w], deterministic in `seed`.
inline Instance random_instance(int n, Weight max_w, std::uint64_t seed) {
    if (n < 2) {
        throw InstanceError(InstanceErrorKind::BadVertexCount, "random_instance needs n >= 2");
    }
    if (max_w < 0) {
        throw InstanceError(InstanceErrorKind::NegativeWeight, "max_w must be >= 0");
    }
    std::mt19937_64 rng(seed);
    std::vector<Weight> w(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (u == v) continue;
            // Rejection sampling keeps the draw portable across standard libraries.
            const auto span = static_cast<std::uint64_t>(max_w) + 1;
            const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                        std::numeric_limits<std::uint64_t>::max() % span;
            std::uint64_t x = rng();
            while (x >= limit) x = rng();
            w[static_cast<std::size_t>(u) * static_cast<std::size_t>(n) +
              static_cast<std::size_t>(v)] = static_cast<Weight>(x % span);
        }
    }
    return Instance(n, std::move(w), 0);
}

inline bool is_valid_tour(int n, const Tour& t) {
    if (static_cast<int>(t.order.size()) != n) return false;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int v : t.order) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = 1;
    }
    return true;
}

/// Sum of the n consecutive edges of the cyclic order.
inline Weight tour_weight(const Instance& inst, const Tour& t) {
    if (!is_valid_tour(inst.size(), t)) {
        throw std::invalid_argument("tour is not a permutation of the instance's vertices");
    }
    Weight total = 0;
    const std::size_t n = t.order.size();
    for (std::size_t i = 0; i < n; ++i) {
        total += inst.weight(t.order[i], t.order[(i + 1) % n]);
    }
    return total;
}

}  // namespace maxatsp

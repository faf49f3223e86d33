#include <algorithm>
#include <cctype>
#include <charconv>
#include <string>
#include <utility>

#include <nstrata/errors.hpp>
#include <nstrata/root_datum.hpp>

#include "cartan_internal.hpp"

namespace nstrata
{

namespace
{

struct Edge
{
    std::size_t a;
    std::size_t b;
    int multiplicity;
};

void check_rank(char family, std::size_t rank)
{
    bool ok = false;
    switch (family) {
    case 'A':
        ok = rank >= 1;
        break;
    case 'B':
    case 'C':
        ok = rank >= 2;
        break;
    case 'D':
        ok = rank >= 4;
        break;
    case 'E':
        ok = rank >= 6 && rank <= 8;
        break;
    case 'F':
        ok = rank == 4;
        break;
    case 'G':
        ok = rank == 2;
        break;
    default:
        throw ParseError(std::string("unknown Cartan type '") + family + "'");
    }
    if (!ok) {
        throw ValidationError(std::string("invalid rank ") + std::to_string(rank) + " for type " + family);
    }
    if (rank > kMaxRank) {
        throw ValidationError("rank exceeds " + std::to_string(kMaxRank));
    }
}

} // namespace

SimpleType simple_type(char family, std::size_t rank)
{
    check_rank(family, rank);
    SimpleType t{family, rank, IntMatrix(rank, rank), std::vector<Rational>(rank, Rational(2))};
    std::vector<Edge> edges;
    // Bourbaki numbering, 0-based.
    if (family == 'E') {
        edges = {{0, 2, 1}, {1, 3, 1}, {2, 3, 1}};
        for (std::size_t i = 3; i + 1 < rank; ++i) {
            edges.push_back({i, i + 1, 1});
        }
    } else if (family == 'D') {
        for (std::size_t i = 0; i + 2 < rank; ++i) {
            edges.push_back({i, i + 1, 1});
        }
        edges.push_back({rank - 3, rank - 1, 1});
    } else {
        for (std::size_t i = 0; i + 1 < rank; ++i) {
            edges.push_back({i, i + 1, 1});
        }
    }
    switch (family) {
    case 'B':
        edges.back().multiplicity = 2;
        t.lengths[rank - 1] = Rational(1);
        break;
    case 'C':
        edges.back().multiplicity = 2;
        t.lengths[rank - 1] = Rational(4);
        break;
    case 'F':
        edges[1].multiplicity = 2;
        t.lengths[2] = t.lengths[3] = Rational(1);
        break;
    case 'G':
        edges[0].multiplicity = 3;
        t.lengths[1] = Rational(6);
        break;
    default:
        break;
    }
    for (std::size_t i = 0; i < rank; ++i) {
        t.cartan(i, i) = 2;
    }
    for (const auto &e : edges) {
        // (a_i, a_j) = -m min(L_i, L_j) / 2 and a_ij = 2 (a_i, a_j) / L_i.
        const Rational ip = Rational(-e.multiplicity) * std::min(t.lengths[e.a], t.lengths[e.b]) / Rational(2);
        const Rational ab = Rational(2) * ip / t.lengths[e.a];
        const Rational ba = Rational(2) * ip / t.lengths[e.b];
        t.cartan(e.a, e.b) = ab.num();
        t.cartan(e.b, e.a) = ba.num();
    }
    return t;
}

namespace detail
{

std::vector<SimpleFactor> classify_components(const IntMatrix &alpha, std::size_t l,
                                              const std::vector<Rational> &lengths)
{
    std::vector<int> comp(l, -1);
    std::vector<SimpleFactor> out;
    for (std::size_t start = 0; start < l; ++start) {
        if (comp[start] >= 0) {
            continue;
        }
        const int id = static_cast<int>(out.size());
        std::vector<std::size_t> nodes;
        std::vector<std::size_t> stack{start};
        comp[start] = id;
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            nodes.push_back(v);
            for (std::size_t w = 0; w < l; ++w) {
                if (w != v && alpha(v, w) != 0 && comp[w] < 0) {
                    comp[w] = id;
                    stack.push_back(w);
                }
            }
        }
        std::sort(nodes.begin(), nodes.end());

        SimpleFactor f{'A', nodes.size(), nodes};
        std::vector<std::size_t> degree(l, 0);
        int max_mult = 1;
        std::pair<std::size_t, std::size_t> multi_edge{};
        for (auto v : nodes) {
            for (auto w : nodes) {
                if (v < w && alpha(v, w) != 0) {
                    ++degree[v];
                    ++degree[w];
                    const int m = static_cast<int>(alpha(v, w) * alpha(w, v));
                    if (m > max_mult) {
                        max_mult = m;
                        multi_edge = {v, w};
                    }
                }
            }
        }
        if (max_mult == 3) {
            f.family = 'G';
        } else if (max_mult == 2) {
            if (nodes.size() == 4 && degree[multi_edge.first] == 2 && degree[multi_edge.second] == 2) {
                f.family = 'F';
            } else {
                Rational longest = lengths[nodes.front()];
                for (auto v : nodes) {
                    longest = std::max(longest, lengths[v]);
                }
                const auto short_count =
                    std::count_if(nodes.begin(), nodes.end(), [&](std::size_t v) { return lengths[v] < longest; });
                f.family = short_count == 1 ? 'B' : 'C';
            }
        } else {
            const auto branch =
                std::find_if(nodes.begin(), nodes.end(), [&](std::size_t v) { return degree[v] == 3; });
            if (branch != nodes.end()) {
                // Arm lengths from the branch node.
                std::vector<std::size_t> arms;
                for (auto w : nodes) {
                    if (w == *branch || alpha(*branch, w) == 0) {
                        continue;
                    }
                    std::size_t len = 1;
                    std::size_t prev = *branch;
                    std::size_t cur = w;
                    while (degree[cur] == 2) {
                        for (auto x : nodes) {
                            if (x != cur && x != prev && alpha(cur, x) != 0) {
                                prev = cur;
                                cur = x;
                                break;
                            }
                        }
                        ++len;
                    }
                    arms.push_back(len);
                }
                std::sort(arms.begin(), arms.end());
                f.family = (arms[0] == 1 && arms[1] == 1) ? 'D' : 'E';
            }
        }
        out.push_back(std::move(f));
    }
    return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Group spec parsing

namespace
{

struct Block
{
    IntMatrix cartan;            // l x l
    std::vector<Rational> lengths;
    IntMatrix extension;         // k x l, torus rows
};

std::size_t parse_size(std::string_view s, std::string_view context)
{
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError("expected a number in '" + std::string(context) + "'");
    }
    return v;
}

std::pair<char, std::size_t> parse_sctype(std::string_view s)
{
    if (s.size() < 2 || std::string_view("ABCDEFG").find(s[0]) == std::string_view::npos) {
        throw ParseError("expected a simple type such as A2 or E6, got '" + std::string(s) + "'");
    }
    return {s[0], parse_size(s.substr(1), s)};
}

// "1,0,-1" or "-e1", "e2-2e5".
std::vector<std::int64_t> parse_intvec(std::string_view s, std::size_t l)
{
    std::vector<std::int64_t> v(l, 0);
    if (s.find('e') == std::string_view::npos) {
        std::size_t count = 0;
        while (true) {
            const auto comma = s.find(',');
            const auto tok = s.substr(0, comma);
            if (count >= l) {
                throw ParseError("m has more than " + std::to_string(l) + " entries");
            }
            auto t = tok;
            if (!t.empty() && t.front() == '+') {
                t.remove_prefix(1);
            }
            const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v[count]);
            if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
                throw ParseError("invalid integer '" + std::string(tok) + "' in m");
            }
            ++count;
            if (comma == std::string_view::npos) {
                break;
            }
            s.remove_prefix(comma + 1);
        }
        if (count != l) {
            throw ParseError("m needs " + std::to_string(l) + " entries");
        }
        return v;
    }
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::int64_t sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (pos != 0) {
            throw ParseError("malformed basis sum '" + std::string(s) + "'");
        }
        std::int64_t coef = 1;
        const auto e = s.find('e', pos);
        if (e == std::string_view::npos) {
            throw ParseError("malformed basis sum '" + std::string(s) + "'");
        }
        if (e > pos) {
            coef = static_cast<std::int64_t>(parse_size(s.substr(pos, e - pos), s));
        }
        auto end = e + 1;
        while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) {
            ++end;
        }
        const auto idx = parse_size(s.substr(e + 1, end - e - 1), s);
        if (idx < 1 || idx > l) {
            throw ParseError("basis index out of range in '" + std::string(s) + "'");
        }
        v[idx - 1] += sign * coef;
        pos = end;
    }
    return v;
}

Block semisimple_block(char family, std::size_t rank)
{
    auto t = simple_type(family, rank);
    return Block{std::move(t.cartan), std::move(t.lengths), IntMatrix(0, rank)};
}

Block extended_block(char family, std::size_t rank, std::span<const std::int64_t> m)
{
    auto b = semisimple_block(family, rank);
    b.extension = IntMatrix(1, rank);
    for (std::size_t j = 0; j < rank; ++j) {
        b.extension(0, j) = m[j];
    }
    return b;
}

RootDatum assemble(const std::vector<Block> &blocks, std::string label, std::optional<std::size_t> gl_degree)
{
    std::size_t l = 0;
    std::size_t k = 0;
    for (const auto &b : blocks) {
        l += b.cartan.rows();
        k += b.extension.rows();
    }
    if (l + k == 0 || l + k > kMaxRank) {
        throw ValidationError("total rank must be between 1 and " + std::to_string(kMaxRank));
    }
    IntMatrix alpha(l + k, l);
    std::vector<Rational> lengths;
    std::size_t r0 = 0;
    std::size_t t0 = l;
    for (const auto &b : blocks) {
        const auto bl = b.cartan.rows();
        for (std::size_t i = 0; i < bl; ++i) {
            for (std::size_t j = 0; j < bl; ++j) {
                alpha(r0 + i, r0 + j) = b.cartan(i, j);
            }
        }
        for (std::size_t i = 0; i < b.extension.rows(); ++i) {
            for (std::size_t j = 0; j < bl; ++j) {
                alpha(t0 + i, r0 + j) = b.extension(i, j);
            }
        }
        lengths.insert(lengths.end(), b.lengths.begin(), b.lengths.end());
        r0 += bl;
        t0 += b.extension.rows();
    }
    return RootDatum(std::move(alpha), l, std::move(lengths), std::move(label), gl_degree);
}

// m = -e_j for the lowest j giving the largest component group.
std::vector<std::int64_t> default_extension(char family, std::size_t rank)
{
    std::vector<std::int64_t> best;
    std::int64_t best_order = 0;
    for (std::size_t j = 0; j < rank; ++j) {
        std::vector<std::int64_t> m(rank, 0);
        m[j] = -1;
        const auto order = component_group(assemble({extended_block(family, rank, m)}, {}, std::nullopt)).order();
        if (order > best_order) {
            best_order = order;
            best = m;
        }
    }
    return best;
}

Block parse_factor(std::string_view f, std::optional<std::size_t> &gl_degree)
{
    if (f.starts_with("Gext(")) {
        if (!f.ends_with(")")) {
            throw ParseError("unterminated Gext( in '" + std::string(f) + "'");
        }
        auto inner = f.substr(5, f.size() - 6);
        const auto semi = inner.find(';');
        const auto [family, rank] = parse_sctype(inner.substr(0, semi));
        check_rank(family, rank);
        if (semi == std::string_view::npos) {
            return extended_block(family, rank, default_extension(family, rank));
        }
        auto rest = inner.substr(semi + 1);
        if (!rest.starts_with("m=")) {
            throw ParseError("expected ';m=' in '" + std::string(f) + "'");
        }
        return extended_block(family, rank, parse_intvec(rest.substr(2), rank));
    }
    if (f.starts_with("GL")) {
        const auto n = parse_size(f.substr(2), f);
        if (n < 1 || n > kMaxRank) {
            throw ValidationError("GLn needs 1 <= n <= " + std::to_string(kMaxRank));
        }
        gl_degree = n;
        if (n == 1) {
            return Block{IntMatrix(0, 0), {}, IntMatrix(1, 0)};
        }
        std::vector<std::int64_t> m(n - 1, 0);
        m[n - 2] = -1;
        return extended_block('A', n - 1, m);
    }
    if (f.starts_with("T")) {
        const auto k = parse_size(f.substr(1), f);
        if (k < 1 || k > kMaxRank) {
            throw ValidationError("Tk needs 1 <= k <= " + std::to_string(kMaxRank));
        }
        return Block{IntMatrix(0, 0), {}, IntMatrix(k, 0)};
    }
    const auto [family, rank] = parse_sctype(f);
    return semisimple_block(family, rank);
}

} // namespace

RootDatum build_group(std::string_view spec)
{
    std::string compact;
    for (char c : spec) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            compact.push_back(c);
        }
    }
    if (compact.empty()) {
        throw ParseError("empty group spec");
    }
    std::vector<Block> blocks;
    std::optional<std::size_t> gl_degree;
    std::size_t gl_count = 0;
    std::string_view rest = compact;
    while (true) {
        // A '*' never occurs inside a factor, so splitting on it is safe.
        const auto star = rest.find('*');
        std::optional<std::size_t> degree;
        blocks.push_back(parse_factor(rest.substr(0, star), degree));
        if (degree) {
            gl_degree = degree;
            ++gl_count;
        }
        if (star == std::string_view::npos) {
            break;
        }
        rest.remove_prefix(star + 1);
    }
    // Slope coordinates only make sense for a lone GLn.
    if (blocks.size() != 1 || gl_count != 1) {
        gl_degree.reset();
    }
    return assemble(blocks, compact, gl_degree);
}

RootDatum gext(char family, std::size_t rank, std::span<const std::int64_t> m)
{
    check_rank(family, rank);
    if (m.size() != rank) {
        throw ValidationError("m must have one entry per simple root");
    }
    std::string label = std::string("Gext(") + family + std::to_string(rank) + ";m=";
    for (std::size_t j = 0; j < rank; ++j) {
        label += (j ? "," : "") + std::to_string(m[j]);
    }
    label += ")";
    return assemble({extended_block(family, rank, m)}, std::move(label), std::nullopt);
}

} // namespace nstrata

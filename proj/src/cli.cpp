#include <nstrata/cli.hpp>

#include <algorithm>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <nstrata/affine.hpp>
#include <nstrata/chamber.hpp>
#include <nstrata/errors.hpp>
#include <nstrata/root_datum.hpp>
#include <nstrata/strata.hpp>
#include <nstrata/torus_eval.hpp>

namespace nstrata
{

namespace
{

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Input

std::vector<std::string> split_list(const std::string &text)
{
    std::vector<std::string> items;
    const auto first = text.find_first_not_of(" \t");
    if (first != std::string::npos && text[first] == '[') {
        // JSON array, as emitted by this tool.
        json arr;
        try {
            arr = json::parse(text);
        } catch (const json::parse_error &e) {
            throw ParseError(std::string("invalid JSON list: ") + e.what());
        }
        for (const auto &v : arr) {
            items.push_back(v.is_string() ? v.get<std::string>() : v.dump());
        }
        return items;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        items.push_back(item);
    }
    return items;
}

ValuationVector parse_valuation(const RootDatum &datum, const std::string &text)
{
    ValuationVector d;
    for (const auto &item : split_list(text)) {
        d.coords.push_back(ExtendedRational::parse(item));
    }
    if (d.size() != datum.rank()) {
        throw ParseError("expected " + std::to_string(datum.rank()) + " coordinates, got " + std::to_string(d.size()));
    }
    for (std::size_t i = datum.semisimple_rank(); i < d.size(); ++i) {
        if (d[i].is_neg_inf()) {
            throw ParseError("-inf is only allowed in the first " + std::to_string(datum.semisimple_rank()) +
                             " coordinates");
        }
    }
    return d;
}

APoint parse_point(const RootDatum &datum, const std::string &text)
{
    const auto d = parse_valuation(datum, text);
    if (!d.is_finite()) {
        throw ParseError("-inf is not allowed here");
    }
    return d.finite();
}

NewtonPoint parse_newton_point(const RootDatum &datum, const std::string &text)
{
    const auto y = parse_point(datum, text);
    auto nu = is_newton_point(datum, y);
    if (!nu) {
        throw PreconditionError("'" + text + "' is not a Newton point");
    }
    return *nu;
}

LambdaGElement parse_lambda_g(const RootDatum &datum, const std::string &text)
{
    std::vector<std::int64_t> v;
    for (const auto &item : split_list(text)) {
        const Rational r = Rational::parse(item);
        if (!r.is_integer()) {
            throw ParseError("Lambda_G elements have integer coordinates");
        }
        v.push_back(r.num());
    }
    if (v.size() == datum.rank()) {
        return LambdaGElement{std::move(v)};
    }
    if (v.size() == datum.torus_rank()) {
        return LambdaGElement::from_class(datum, v);
    }
    throw ParseError("expected a lift with " + std::to_string(datum.rank()) + " or a class with " +
                     std::to_string(datum.torus_rank()) + " coordinates");
}

// ---------------------------------------------------------------------------
// Output

json to_json(const std::vector<Rational> &v)
{
    json a = json::array();
    for (const auto &r : v) {
        a.push_back(r.str());
    }
    return a;
}

json to_json(const ValuationVector &v)
{
    json a = json::array();
    for (const auto &r : v.coords) {
        a.push_back(r.str());
    }
    return a;
}

json to_json(LeviDescriptor s)
{
    json a = json::array();
    for (auto j : s.indices()) {
        a.push_back(j + 1);
    }
    return a;
}

json to_json(const std::vector<std::size_t> &word)
{
    json a = json::array();
    for (auto j : word) {
        a.push_back(j + 1);
    }
    return a;
}

void add_slopes(json &j, const RootDatum &datum, const APoint &x)
{
    if (auto s = gl_slopes(datum, x)) {
        j["slopes"] = to_json(*s);
    }
}

json to_json(const RootDatum &datum, const NewtonPoint &nu)
{
    json j{{"point", to_json(nu.point.coords)}, {"levi", to_json(nu.levi)}, {"lift", to_json(nu.lift.coords)}};
    add_slopes(j, datum, nu.point);
    return j;
}

json to_json(const DefectReport &r)
{
    json nu = json::array();
    for (auto c : r.class_coords) {
        nu.push_back(c);
    }
    return json{{"nu", nu},
                {"w_word", to_json(r.w_word)},
                {"defect", r.defect},
                {"d_G", r.d_G.str()},
                {"pass", r.pass}};
}

std::string scalar_text(const json &v)
{
    return v.is_string() ? v.get<std::string>() : v.dump();
}

// Plain rendering with the same values as the JSON form: one "path: values"
// line per scalar or flat array.
void render_text(const json &j, std::ostream &out, const std::string &path = {})
{
    const auto line = [&](const std::string &value) {
        out << (path.empty() ? value : path + ": " + value) << '\n';
    };
    if (j.is_object()) {
        for (const auto &[key, value] : j.items()) {
            render_text(value, out, path.empty() ? key : path + "." + key);
        }
        return;
    }
    if (!j.is_array()) {
        line(scalar_text(j));
        return;
    }
    const bool flat = std::none_of(j.begin(), j.end(), [](const json &e) { return e.is_structured(); });
    if (!flat) {
        for (std::size_t k = 0; k < j.size(); ++k) {
            render_text(j[k], out, path + "[" + std::to_string(k + 1) + "]");
        }
        return;
    }
    std::string joined;
    for (const auto &e : j) {
        joined += (joined.empty() ? "" : " ") + scalar_text(e);
    }
    line(joined);
}

// ---------------------------------------------------------------------------
// verify

std::vector<LambdaGElement> lifts_of_classes(const RootDatum &datum, std::mt19937_64 &rng, std::size_t per_class)
{
    const auto cg = component_group(datum);
    const IntMatrix central = integer_kernel(datum.alpha().transpose());
    std::uniform_int_distribution<std::int64_t> coef(-3, 3);
    std::vector<LambdaGElement> out;
    for (const auto &base : cg.all_classes()) {
        for (std::size_t k = 0; k < per_class; ++k) {
            LambdaGElement e{base};
            if (k == 0) {
                out.push_back(e);
                continue;
            }
            // Shift by coroots (same element of Lambda_G) and by central
            // cocharacters (same component class).
            for (std::size_t j = 0; j < datum.semisimple_rank(); ++j) {
                e.lift[j] += coef(rng);
            }
            for (std::size_t c = 0; c < central.cols(); ++c) {
                const auto t = coef(rng);
                for (std::size_t i = 0; i < datum.rank(); ++i) {
                    e.lift[i] += t * central(i, c);
                }
            }
            out.push_back(std::move(e));
        }
    }
    return out;
}

json lift_json(const std::vector<std::int64_t> &lift)
{
    json a = json::array();
    for (auto v : lift) {
        a.push_back(v);
    }
    return a;
}

json run_verify(const RootDatum &datum, const std::string &suite, std::uint64_t seed, std::size_t count)
{
    std::mt19937_64 rng(seed);
    json results = json::array();
    json failures = json::array();
    const bool all = suite == "all";

    if (all || suite == "rnu") {
        const auto orbits = fundamental_orbits(datum);
        std::size_t failed = 0;
        for (std::size_t k = 0; k < count; ++k) {
            const auto a = random_torus_point(datum, rng);
            const auto r = check_thm_rnu(datum, orbits, a);
            if (!r.pass) {
                ++failed;
                failures.push_back(json{{"suite", "rnu"}, {"a", a.str()}, {"detail", r.detail}});
            }
        }
        results.push_back(json{{"suite", "rnu"}, {"cases", count}, {"failures", failed}});
    }
    if (all || suite == "defect" || suite == "chars") {
        const auto lifts = lifts_of_classes(datum, rng, 3);
        if (all || suite == "defect") {
            std::size_t failed = 0;
            for (std::size_t k = 0; k < lifts.size(); ++k) {
                const auto r = verify_theorem_d_equals_half_defect(datum, lifts[k]);
                // Lifts of the same class come in runs of three.
                const bool same_w = w_nu(datum, lifts[k]) == w_nu(datum, lifts[k - k % 3]);
                if (!r.pass || !same_w) {
                    ++failed;
                    auto f = to_json(r);
                    f["suite"] = "defect";
                    f["lift"] = lift_json(lifts[k].lift);
                    f["lift_independent"] = same_w;
                    failures.push_back(std::move(f));
                }
            }
            results.push_back(json{{"suite", "defect"}, {"cases", lifts.size()}, {"failures", failed}});
        }
        if (all || suite == "chars") {
            std::size_t failed = 0;
            for (const auto &nu : lifts) {
                const auto r = reflection_char_multiset_check(datum, nu);
                if (!r.pass) {
                    ++failed;
                    failures.push_back(json{{"suite", "chars"}, {"lift", lift_json(nu.lift)}, {"detail", r.detail}});
                }
            }
            results.push_back(json{{"suite", "chars"}, {"cases", lifts.size()}, {"failures", failed}});
        }
    }
    return json{{"group", datum.label()},
                {"seed", seed},
                {"results", results},
                {"failures", failures},
                {"pass", failures.empty()}};
}

json describe_json(const RootDatum &datum)
{
    json factors = json::array();
    for (const auto &f : datum.factors()) {
        factors.push_back(f.label());
    }
    json alpha = json::array();
    for (std::size_t i = 0; i < datum.rank(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < datum.semisimple_rank(); ++j) {
            row.push_back(datum.alpha()(i, j));
        }
        alpha.push_back(std::move(row));
    }
    json cg = json::array();
    for (auto d : component_group(datum).invariant_factors) {
        cg.push_back(d);
    }
    return json{{"group", datum.label()},
                {"n", datum.rank()},
                {"l", datum.semisimple_rank()},
                {"factors", factors},
                {"torus_rank", datum.torus_rank()},
                {"alpha", alpha},
                {"component_group", cg}};
}

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Newton strata of the adjoint quotient of a split reductive group", "nstrata"};
    app.fallthrough();
    app.require_subcommand(1);

    std::string group;
    std::string format = "json";
    app.add_option("--group", group, "Group spec, e.g. GL3, B2*T1, Gext(E6;m=-e1)");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));

    std::string d_text;
    std::string mu_text;
    std::string nu_text;
    std::string a_text;
    bool closed = false;
    bool chai = false;
    bool dot = false;
    std::string suite = "all";
    std::uint64_t seed = 1;
    std::size_t count = 100;

    auto *describe = app.add_subcommand("describe", "Print the root datum");
    auto *retract_cmd = app.add_subcommand("retract", "Retract a valuation vector onto the dominant chamber");
    retract_cmd->add_option("--d", d_text, "Coordinates; -inf allowed in the first l")->required();
    auto *stratum = app.add_subcommand("stratum", "Newton point of an integral valuation vector");
    stratum->add_option("--d", d_text, "Integral coordinates; -inf allowed in the first l")->required();
    auto *conditions = app.add_subcommand("conditions", "Conditions cutting out a Newton stratum");
    conditions->add_option("--mu", mu_text, "Newton point")->required();
    conditions->add_flag("--closed", closed, "Conditions for the closure");
    auto *dim = app.add_subcommand("dim", "Dimension of the closed stratum");
    dim->add_option("--mu", mu_text, "Newton point")->required();
    auto *codim_cmd = app.add_subcommand("codim", "Codimension of one closed stratum in another");
    codim_cmd->add_option("--nu", nu_text, "Smaller Newton point")->required();
    codim_cmd->add_option("--mu", mu_text, "Larger Newton point")->required();
    codim_cmd->add_flag("--chai", chai, "Use the fundamental-weight ceiling formula (mu integral)");
    auto *points = app.add_subcommand("newton-points", "All Newton points below mu");
    points->add_option("--mu", mu_text, "Newton point")->required();
    points->add_flag("--dot", dot, "Emit the Hasse diagram as DOT");
    auto *defect_cmd = app.add_subcommand("defect", "Defect of an element of Lambda_G");
    defect_cmd->add_option("--nu", nu_text, "Integral lift (n entries) or class (n - l entries)")->required();
    auto *dg = app.add_subcommand("dg", "The invariant d_G of a Newton point");
    dg->add_option("--nu", nu_text, "Newton point")->required();
    auto *eval = app.add_subcommand("eval", "Evaluate c_1..c_n at a torus point");
    eval->add_option("--a", a_text, "Monomials w_i(a), e.g. 1*pi^(-1),-1*pi^(-2)")->required();
    auto *verify = app.add_subcommand("verify", "Randomized verification suites");
    verify->add_option("--suite", suite, "Suite to run")->check(CLI::IsMember({"all", "rnu", "defect", "chars"}));
    verify->add_option("--seed", seed, "Random seed");
    verify->add_option("--count", count, "Random torus points for the rnu suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (group.empty()) {
            throw ParseError("--group is required");
        }
        const RootDatum datum = build_group(group);
        json result;
        int code = kExitOk;
        if (*describe) {
            result = describe_json(datum);
        } else if (*retract_cmd) {
            const auto r = retract(datum, parse_valuation(datum, d_text));
            result = json{{"y", to_json(r.y.coords)}, {"levi", to_json(r.levi)}};
            add_slopes(result, datum, r.y);
        } else if (*stratum) {
            result = to_json(datum, stratum_of(datum, parse_valuation(datum, d_text)));
        } else if (*conditions) {
            const auto sc = stratum_conditions(datum, parse_newton_point(datum, mu_text), closed);
            result = json::array();
            for (const auto &c : sc.conditions) {
                result.push_back(
                    json{{"i", c.i + 1}, {"rel", c.rel == Relation::leq ? "<=" : "="}, {"bound", c.bound.str()}});
            }
        } else if (*dim) {
            result = dim_leq(datum, parse_newton_point(datum, mu_text).point);
        } else if (*codim_cmd) {
            const auto nu = parse_newton_point(datum, nu_text);
            if (chai) {
                result = codim_chai(datum, nu.point, parse_point(datum, mu_text));
            } else {
                result = codim(datum, nu.point, parse_newton_point(datum, mu_text).point);
            }
        } else if (*points) {
            const auto below = newton_points_below(datum, parse_newton_point(datum, mu_text));
            if (dot) {
                out << hasse_dot(datum, below);
                return kExitOk;
            }
            json pts = json::array();
            for (const auto &p : below) {
                pts.push_back(to_json(datum, p));
            }
            json edges = json::array();
            for (const auto &[a, b] : hasse(datum, below)) {
                edges.push_back(json::array({a, b}));
            }
            result = json{{"points", pts}, {"edges", edges}};
        } else if (*defect_cmd) {
            const auto report = verify_theorem_d_equals_half_defect(datum, parse_lambda_g(datum, nu_text));
            result = to_json(report);
            code = report.pass ? kExitOk : kExitVerificationFailed;
        } else if (*dg) {
            result = d_G(datum, parse_newton_point(datum, nu_text).point).str();
        } else if (*eval) {
            const auto a = TorusPoint::parse(a_text);
            const auto orbits = fundamental_orbits(datum);
            const auto c = eval_c(datum, orbits, a);
            const auto report = check_thm_rnu(datum, orbits, a);
            json values = json::array();
            for (const auto &v : c.values) {
                values.push_back(v.str());
            }
            result = json{{"nu_a", to_json(nu_a(a).coords)},
                          {"c", values},
                          {"d_c", to_json(c.d_c)},
                          {"y", to_json(report.retracted.coords)},
                          {"nu_dominant", to_json(report.nu_dominant.coords)},
                          {"pass", report.pass}};
            code = report.pass ? kExitOk : kExitVerificationFailed;
        } else if (*verify) {
            result = run_verify(datum, suite, seed, count);
            code = result["pass"].get<bool>() ? kExitOk : kExitVerificationFailed;
        }
        if (format == "text") {
            render_text(result, out);
        } else {
            out << result.dump() << '\n';
        }
        return code;
    } catch (const InvariantViolation &e) {
        err << "internal check failed: " << e.what() << '\n';
        return kExitVerificationFailed;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

} // namespace nstrata

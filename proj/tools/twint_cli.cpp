// twint_cli: command-line front end. Exit codes: 0 ok, 2 bad input or
// violated precondition, 3 numerical tolerance exceeded.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "twint/contiguity.hpp"
#include "twint/homology.hpp"
#include "twint/io.hpp"
#include "twint/series.hpp"

using namespace twint;

namespace {

constexpr int kExitPrecondition = 2;
constexpr int kExitTolerance = 3;

struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string input;
    std::string mode = "symbolic";
    std::optional<std::uint64_t> seed;
    std::string alpha_file;
    std::string output;
    int truncation = 24;
    double tolerance = 1e-8;
    // gram
    std::string rows, cols;
    // contiguity
    int j0 = -1, q = -1, shift = -1;
    std::string method = "closed";
    // chambers
    bool perturb = false;
    // homology-pair
    std::string sigma, tau, vanishing;
};

void emit(const Options& o, const json& j) {
    std::string text = j.dump(2) + "\n";
    if (o.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.output);
    if (!out) throw PreconditionError("cannot write " + o.output);
    out << text;
}

/// "0 1 2; 0 1 3" -> {{0,1,2},{0,1,3}}
Family parse_family(const std::string& text) {
    Family f;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        std::stringstream is(item);
        IndexTuple J;
        int v;
        while (is >> v) J.push_back(v);
        if (!is.eof()) throw PreconditionError("bad family text: " + text);
        if (!J.empty()) f.push_back(J);
    }
    return f;
}

/// Exact alpha: from --alpha-file ({"alpha": [...]}, k+n+1 or k+n+2 entries)
/// or a seeded random point.
std::vector<Rat> alpha_point(const Options& o, const ParamContext& ctx, std::span<const int> jvan) {
    if (!o.alpha_file.empty()) {
        json j = load_json(o.alpha_file);
        const json& a = j.contains("alpha") ? j.at("alpha") : j;
        std::vector<Rat> x;
        for (const auto& v : a) x.push_back(rat_from_json(v));
        if (x.size() == ctx.nfree()) {
            Rat s = 0;
            for (const auto& v : x) s += v;
            x.push_back(-s);
        }
        if (x.size() != ctx.size()) throw PreconditionError("alpha must have k+n+1 or k+n+2 entries");
        Rat s = 0;
        for (const auto& v : x) s += v;
        if (s != 0) throw PreconditionError("alpha entries must sum to 0");
        return x;
    }
    if (!o.seed) throw PreconditionError("evaluated mode needs --seed or --alpha-file");
    return ctx.random_point(*o.seed, jvan);
}

json rat_vector(const std::vector<Rat>& v) {
    json a = json::array();
    for (const auto& r : v) a.push_back(to_string(r));
    return a;
}

json tagged(json g, const Classification& c) {
    g["variant"] = variant_name(c.variant);
    if (c.variant == Variant::OneDegenerate) g["Jvan"] = c.jvan;
    return g;
}

int cmd_classify(const Options& o) {
    CoeffMatrix z = load_matrix(o.input);
    Classification c = classify(z);
    emit(o, classification_to_json(c));
    return c.variant == Variant::Other ? kExitPrecondition : 0;
}

int cmd_gram(const Options& o) {
    CoeffMatrix z = load_matrix(o.input);
    Classification c = classify(z);
    if (c.variant == Variant::Other) throw PreconditionError("matrix has more than one vanishing minor");
    bool degenerate = c.variant == Variant::OneDegenerate;
    Family rows, cols;
    if (o.rows.empty()) {
        rows = family_qp(z.k(), z.n(), z.ncols() - 1, 0);
        if (degenerate) rows = index_family(z.k(), z.n(), {{0}, {z.ncols() - 1}, {c.jvan}});
    } else {
        rows = parse_family(o.rows);
    }
    cols = o.cols.empty() ? rows : parse_family(o.cols);
    for (const auto& f : {rows, cols})
        for (const auto& J : f) {
            if (J.size() != static_cast<std::size_t>(z.k() + 1)) throw PreconditionError("tuples need k+1 indices");
            validate_tuple(J, z.ncols());
        }
    ParamContext ctx(z.k(), z.n());
    if (o.mode == "symbolic") {
        auto a = ctx.symbols();
        std::span<const RatFunc> as(a);
        auto g = degenerate ? gram_degenerate(rows, cols, c.jvan, z.k(), as) : gram_generic(rows, cols, z.k(), as);
        emit(o, tagged(gram_to_json(g, ctx), c));
    } else {
        auto x = alpha_point(o, ctx, c.jvan);
        std::span<const Rat> xs(x);
        auto g = degenerate ? gram_degenerate(rows, cols, c.jvan, z.k(), xs) : gram_generic(rows, cols, z.k(), xs);
        json j = tagged(gram_to_json(g, ctx), c);
        j["alpha"] = rat_vector(x);
        emit(o, j);
    }
    return 0;
}

int cmd_chambers(const Options& o) {
    CoeffMatrix z = load_matrix(o.input);
    Classification c = classify(z);
    if (c.variant == Variant::Other) throw PreconditionError("matrix has more than one vanishing minor");
    auto cs = enumerate_chambers(z);
    json list = json::array();
    for (const auto& ch : cs) list.push_back({{"id", ch.id}, {"bounded", ch.bounded}});
    json j = classification_to_json(c);
    j["chambers"] = list;
    j["bounded"] = bounded_count(cs);
    if (o.perturb) {
        if (c.variant != Variant::OneDegenerate) throw PreconditionError("--perturb needs a one-point degenerate matrix");
        int m = 0;
        CoeffMatrix zp = perturb(z, c.jvan, 200, &m);
        auto pcs = enumerate_chambers(zp);
        Chamber van = vanishing_chamber(zp, z, pcs);
        auto oc = orth_complement(zp, pcs, van, c.jvan);
        json perp = json::array();
        for (const auto& ch : oc.perp) perp.push_back(ch.id);
        json p = {{"epsilon_exponent", m},
                  {"matrix", matrix_to_json(zp)},
                  {"bounded", bounded_count(pcs)},
                  {"vanishing", {{"id", van.id}, {"bounded", van.bounded}}},
                  {"orthogonal_complement", perp}};
        p["exceptional"] = oc.exceptional ? json(oc.exceptional->id) : json(nullptr);
        j["perturbed"] = p;
    }
    emit(o, j);
    return 0;
}

int cmd_contiguity(const Options& o) {
    CoeffMatrix z = load_matrix(o.input);
    Classification c = classify(z);
    if (c.variant != Variant::OneDegenerate) throw PreconditionError("contiguity needs a one-point degenerate matrix");
    int j0 = o.j0 >= 0 ? o.j0 : c.jvan.front();
    int q = o.q;
    if (q < 0)
        for (int j = z.ncols() - 1; j >= 0 && q < 0; --j)
            if (!contains(c.jvan, j)) q = j;
    ContiguityContext ctx(z, j0, q);
    if (o.shift < 0) throw PreconditionError("--shift is required");
    if (o.method != "closed" && o.method != "elimination") throw PreconditionError("--method must be closed or elimination");
    InverseMethod m = o.method == "closed" ? InverseMethod::ClosedForm : InverseMethod::Elimination;
    ParamContext pc(z.k(), z.n());
    json j;
    if (o.mode == "symbolic") {
        auto a = pc.symbols();
        j = gram_to_json(ctx.conti<RatFunc>(o.shift, std::span<const RatFunc>(a), m), pc);
    } else {
        auto x = alpha_point(o, pc, c.jvan);
        j = gram_to_json(ctx.conti<Rat>(o.shift, std::span<const Rat>(x), m), pc);
        j["alpha"] = rat_vector(x);
    }
    j["Jvan"] = c.jvan;
    j["j0"] = j0;
    j["q"] = q;
    j["shift"] = o.shift;
    j["method"] = o.method;
    emit(o, j);
    return 0;
}

/// Input file: {"x": [[x11, x12], [x21, x22]]} with x11 = 0, exact entries.
int cmd_series_check(const Options& o) {
    json in = load_json(o.input);
    const json& xs = in.at("x");
    if (xs.size() != 2 || xs[0].size() != 2 || xs[1].size() != 2) throw PreconditionError("x must be 2 x 2");
    Matrix<Rat> x(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) x(i, j) = rat_from_json(xs[i][j]);
    if (x(0, 0) != 0) throw PreconditionError("x11 must be 0");
    CoeffMatrix z0 = special_matrix(x);
    Classification c = classify(z0);
    if (c.variant != Variant::OneDegenerate) throw PreconditionError("x must have exactly one vanishing minor");
    ContiguityContext ctx(z0, 0, 5);
    ParamContext pc(2, 2);
    auto a = alpha_point(o, pc, c.jvan);

    SeriesParams sp;
    sp.k = 2;
    sp.n = 2;
    sp.zero = std::pair{0, 0};
    sp.truncation = o.truncation;
    for (const auto& v : a) sp.alpha.push_back(to_double(v));
    sp.x = {{0.0, to_double(x(0, 1))}, {to_double(x(1, 0)), to_double(x(1, 1))}};
    sp.validate();

    std::vector<int> shifts;
    if (o.shift >= 0) shifts.push_back(o.shift);
    else shifts = {1, 2, 3, 4, 5};
    json res = json::object();
    double worst = 0;
    for (int l : shifts) {
        auto cm = ctx.conti<Rat>(l, std::span<const Rat>(a));
        RealMatrix m(5, std::vector<double>(5));
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j) m[i][j] = to_double(cm.entries(i, j));
        double r = check_contiguity(sp, l, m);
        res[std::to_string(l)] = r;
        worst = std::max(worst, r);
    }
    auto sv = series_S(sp);
    json j = {{"alpha", rat_vector(a)},
              {"Jvan", c.jvan},
              {"basis", ctx.base()},
              {"truncation", o.truncation},
              {"S", sv.value},
              {"tail", sv.tail},
              {"bold_S", bold_s(sp)},
              {"residuals", res},
              {"max_residual", worst},
              {"tolerance", o.tolerance},
              {"pass", worst < o.tolerance}};
    emit(o, j);
    return worst < o.tolerance ? 0 : kExitTolerance;
}

int cmd_homology_pair(const Options& o) {
    json fx = load_json(o.input);
    auto oracle = PairingOracle::from_json(fx);
    auto pick = [&](const std::string& given, const char* key) {
        if (!given.empty()) return given;
        if (fx.contains("chambers") && fx["chambers"].contains(key)) return fx["chambers"][key].get<std::string>();
        throw PreconditionError(std::string("missing chamber id for ") + key);
    };
    std::string van = pick(o.vanishing, "vanishing"), sigma = pick(o.sigma, "sigma"), tau = pick(o.tau, "tau");
    RatFunc v;
    try {
        v = pairing_degenerate_h(sigma, tau, van, oracle);
    } catch (const std::out_of_range& e) {
        throw PreconditionError(e.what());
    }
    emit(o, {{"sigma", sigma}, {"tau", tau}, {"vanishing", van}, {"value", oracle.context().format(v)}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Intersection numbers, chambers and contiguity for one-point degenerate arrangements"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* s, bool modes) {
        s->add_option("input", o.input, "input file")->required()->check(CLI::ExistingFile);
        s->add_option("--output", o.output, "write JSON here instead of stdout");
        if (modes) {
            s->add_option("--mode", o.mode, "symbolic or evaluated")->check(CLI::IsMember({"symbolic", "evaluated"}));
            s->add_option("--seed", o.seed, "seed for a random exact alpha");
            s->add_option("--alpha-file", o.alpha_file, "JSON file with exact alpha")->check(CLI::ExistingFile);
        }
    };

    auto* classify_cmd = app.add_subcommand("classify", "classify a coefficient matrix");
    common(classify_cmd, false);

    auto* gram_cmd = app.add_subcommand("gram", "Gram matrix of log forms");
    common(gram_cmd, true);
    gram_cmd->add_option("--rows", o.rows, "row family, e.g. \"0 1 2;0 1 3\"");
    gram_cmd->add_option("--cols", o.cols, "column family (defaults to rows)");

    auto* chambers_cmd = app.add_subcommand("chambers", "enumerate real chambers");
    common(chambers_cmd, false);
    chambers_cmd->add_flag("--perturb", o.perturb, "also perturb a degenerate matrix and report the vanishing chamber");

    auto* conti_cmd = app.add_subcommand("contiguity", "contiguity matrix for the shift alpha + e_l - e_j0");
    common(conti_cmd, true);
    conti_cmd->add_option("--j0", o.j0, "element of J^van (default: smallest)");
    conti_cmd->add_option("--q", o.q, "index outside J^van (default: largest)");
    conti_cmd->add_option("--shift", o.shift, "shift index l")->required();
    conti_cmd->add_option("--method", o.method, "closed or elimination");

    auto* series_cmd = app.add_subcommand("series-check", "series residual of the contiguity relations (k = n = 2)");
    common(series_cmd, false);
    series_cmd->add_option("--seed", o.seed, "seed for a random exact alpha");
    series_cmd->add_option("--alpha-file", o.alpha_file, "JSON file with exact alpha")->check(CLI::ExistingFile);
    series_cmd->add_option("--truncation", o.truncation, "total degree M")->check(CLI::NonNegativeNumber);
    series_cmd->add_option("--tolerance", o.tolerance, "residual tolerance")->check(CLI::PositiveNumber);
    series_cmd->add_option("--shift", o.shift, "single shift index (default: all)");

    auto* hp_cmd = app.add_subcommand("homology-pair", "degenerate homology pairing from an oracle table");
    common(hp_cmd, false);
    hp_cmd->add_option("--sigma", o.sigma, "chamber id on the + side");
    hp_cmd->add_option("--tau", o.tau, "chamber id on the - side");
    hp_cmd->add_option("--vanishing", o.vanishing, "vanishing chamber id");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitPrecondition;
    }

    try {
        if (classify_cmd->parsed()) return cmd_classify(o);
        if (gram_cmd->parsed()) return cmd_gram(o);
        if (chambers_cmd->parsed()) return cmd_chambers(o);
        if (conti_cmd->parsed()) return cmd_contiguity(o);
        if (series_cmd->parsed()) return cmd_series_check(o);
        if (hp_cmd->parsed()) return cmd_homology_pair(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    }
    return kExitPrecondition;
}

#pragma once

#include "qiso/certifier.hpp"
#include "qiso/hom_polynomial.hpp"
#include "qiso/spin_model.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

namespace qiso::cli {

enum ExitCode : int { ok = 0, check_failed = 1, usage = 2, exhausted = 3 };

/// Thrown for unreadable or malformed inputs (exit 2).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline Json read_json(const std::string& path) {
    try {
        return Json::parse(read_file(path));
    } catch (const Json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw InputError("cannot write '" + path + "'");
}

inline std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

inline Json poly_to_json(const UniPoly& p) {
    Json c = Json::array();
    for (const auto& q : p.coefficients()) c.push_back(to_fraction_string(q));
    return c;
}

/// Result JSON goes to --output when given, else to stdout under --json;
/// the summary is printed unless --json is set.
struct Emitter {
    std::string output;
    bool json_only = false;

    void emit(std::ostream& out, const Json& j, const std::string& summary) const {
        const std::string text = j.dump(2) + "\n";
        if (!output.empty()) write_file(output, text);
        if (json_only) out << text;
        else out << summary;
    }
};

}  // namespace detail

/// Parses argv and runs one subcommand; never throws.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Quantum isomorphism certificates from association scheme parameters", "qiso"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");
    detail::Emitter em;
    auto add_output = [&](CLI::App* c) {
        c->add_option("-o,--output", em.output, "Write the JSON result to this file");
        c->add_flag("--json", em.json_only, "Print the JSON result instead of the summary");
    };
    unsigned jobs = 1;
    auto add_jobs = [&](CLI::App* c) { c->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u)); };

    std::function<int()> action;

    // scheme validate | params | triple
    auto* scheme = app.add_subcommand("scheme", "Association scheme tools");
    scheme->require_subcommand(1);
    std::string scheme_path;
    double tolerance = 1e-6;
    {
        auto* v = scheme->add_subcommand("validate", "Check the scheme axioms");
        v->add_option("scheme", scheme_path, "Scheme JSON")->required();
        add_output(v);
        v->callback([&] {
            action = [&]() -> int {
                const Json j = detail::read_json(scheme_path);
                try {
                    const auto s = scheme_from_json(j);
                    em.emit(out, Json{{"valid", true}, {"size", s.size()}, {"classes", s.classes()}, {"fingerprint", scheme_fingerprint(s)}},
                            "valid scheme: " + std::to_string(s.size()) + " points, " + std::to_string(s.classes()) + " classes\n");
                    return ok;
                } catch (const SchemeError& e) {
                    Json w = Json::array();
                    for (const auto& [x, y] : e.witnesses()) w.push_back({x, y});
                    em.emit(out, Json{{"valid", false}, {"error", e.what()}, {"witnesses", w}}, std::string("invalid scheme: ") + e.what() + "\n");
                    return check_failed;
                }
            };
        });

        auto* p = scheme->add_subcommand("params", "Intersection numbers and numeric eigenmatrices");
        p->add_option("scheme", scheme_path, "Scheme JSON")->required();
        p->add_option("--tolerance", tolerance, "Tolerance for Krein positivity")->check(CLI::PositiveNumber);
        add_output(p);
        p->callback([&] {
            action = [&]() -> int {
                const auto s = scheme_from_json(detail::read_json(scheme_path));
                const auto sp = numeric_spectrum(s, tolerance);
                auto mat = [](const Eigen::MatrixXd& m) {
                    Json a = Json::array();
                    for (Eigen::Index i = 0; i < m.rows(); ++i) {
                        Json row = Json::array();
                        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
                        a.push_back(std::move(row));
                    }
                    return a;
                };
                Json j{{"size", s.size()},
                       {"classes", s.classes()},
                       {"valencies", s.intersection().valencies()},
                       {"intersection_numbers", intersection_to_json(s.intersection())},
                       {"Np", s.intersection().support_size()},
                       {"Nq", sp.Nq},
                       {"P", mat(sp.P)},
                       {"Q", mat(sp.Q)},
                       {"multiplicities", sp.multiplicities},
                       {"min_krein", sp.min_krein}};
                std::ostringstream sum;
                sum << s.size() << " points, " << s.classes() << " classes; valencies";
                for (long k : s.intersection().valencies()) sum << ' ' << k;
                sum << "; Np = " << s.intersection().support_size() << ", Nq = " << sp.Nq << "\n";
                em.emit(out, j, sum.str());
                return ok;
            };
        });

        auto* t = scheme->add_subcommand("triple", "Triple regularity tables");
        t->add_option("scheme", scheme_path, "Scheme JSON")->required();
        t->add_option("--tolerance", tolerance, "Tolerance for Krein positivity")->check(CLI::PositiveNumber);
        add_output(t);
        add_jobs(t);
        t->callback([&] {
            action = [&]() -> int {
                const auto s = scheme_from_json(detail::read_json(scheme_path));
                const auto rep = exactly_tr_report(s, jobs, tolerance);
                Json j{{"triply_regular", rep.triply_regular},
                       {"dually_triply_regular", rep.dually_triply_regular},
                       {"Np", rep.Np},
                       {"Nq", rep.Nq}};
                if (rep.tables) j["tables"] = tables_to_json(*rep.tables);
                else j["failure"] = rep.failure;
                const bool good = rep.exactly_triply_regular();
                em.emit(out, j, good ? "exactly triply regular; Np = " + std::to_string(rep.Np) + ", Nq = " + std::to_string(rep.Nq) + "\n"
                                     : rep.failure + "\n");
                return good ? ok : check_failed;
            };
        });
    }

    // hadamard gen | graph | spincheck
    auto* had = app.add_subcommand("hadamard", "Hadamard matrices and graphs");
    had->require_subcommand(1);
    std::string matrix_path, graph_out, text_out;
    int syl = -1, pal = -1, order = -1;
    std::vector<std::string> kron_files;
    unsigned precision = 50;
    std::optional<double> spin_tol;
    {
        auto* g = had->add_subcommand("gen", "Generate a Hadamard matrix");
        auto* o1 = g->add_option("--sylvester", syl, "Sylvester construction of order 2^k")->check(CLI::Range(0, 12));
        auto* o2 = g->add_option("--paley", pal, "Paley I construction from a prime power q = 3 mod 4")->check(CLI::PositiveNumber);
        auto* o3 = g->add_option("--kron", kron_files, "Kronecker product of two matrix files")->expected(2);
        auto* o4 = g->add_option("--order", order, "Catalogued matrix of this order")->check(CLI::PositiveNumber);
        o1->excludes(o2, o3, o4);
        o2->excludes(o3, o4);
        o3->excludes(o4);
        g->add_option("-o,--output", text_out, "Write the matrix text here instead of stdout");
        g->callback([&] {
            if (syl < 0 && pal < 0 && order < 0 && kron_files.empty())
                throw CLI::ValidationError("hadamard gen", "one of --sylvester, --paley, --kron, --order is required");
            action = [&]() -> int {
                HadamardMatrix h = syl >= 0 ? sylvester(syl)
                                 : pal > 0  ? paley1(pal)
                                 : order > 0
                                     ? hadamard_of_order(order)
                                     : kron(parse_hadamard_text(detail::read_file(kron_files[0]), kron_files[0]),
                                            parse_hadamard_text(detail::read_file(kron_files[1]), kron_files[1]));
                if (text_out.empty()) out << h.to_text();
                else {
                    detail::write_file(text_out, h.to_text());
                    out << "order " << h.order() << " (" << h.provenance() << ") written to " << text_out << "\n";
                }
                return ok;
            };
        });

        auto* gr = had->add_subcommand("graph", "Build the Hadamard graph and its distance scheme");
        gr->add_option("matrix", matrix_path, "Matrix text file")->required();
        gr->add_option("--graph-output", graph_out, "Write the graph JSON here");
        add_output(gr);
        gr->callback([&] {
            action = [&]() -> int {
                const auto h = parse_hadamard_text(detail::read_file(matrix_path), matrix_path);
                const auto b = build_hadamard_graph(h);
                if (!graph_out.empty()) {
                    std::vector<std::pair<int, int>> pairs;
                    for (std::size_t x = 0; x < b.vertex_count(); ++x)
                        for (std::size_t y = x + 1; y < b.vertex_count(); ++y)
                            if (b.adjacent(x, y)) pairs.emplace_back(static_cast<int>(x), static_cast<int>(y));
                    detail::write_file(graph_out,
                                       graph_to_json(AbstractGraph::from_pairs(static_cast<int>(b.vertex_count()), pairs)).dump(2) + "\n");
                }
                const bool tables = b.scheme.intersection() == hadamard_intersection_tensor(b.n);
                em.emit(out, scheme_to_json(b.scheme),
                        "Hadamard graph of order " + std::to_string(4 * b.n) + ": 4-class distance scheme, intersection numbers " +
                            (tables ? "match" : "DO NOT match") + " the expected tables\n");
                return tables ? ok : check_failed;
            };
        });

        auto* sc = had->add_subcommand("spincheck", "Spin model identities at high precision");
        sc->add_option("matrix", matrix_path, "Matrix text file")->required();
        sc->add_option("--precision", precision, "Decimal digits")->check(CLI::Range(10u, 10000u));
        sc->add_option("--tolerance", spin_tol, "Residual tolerance (default 10^(-precision/2))")->check(CLI::PositiveNumber);
        add_output(sc);
        sc->callback([&] {
            action = [&]() -> int {
                const auto b = build_hadamard_graph(parse_hadamard_text(detail::read_file(matrix_path), matrix_path));
                std::optional<HPFloat> t;
                if (spin_tol) t = HPFloat(*spin_tol);
                const auto r = spin_model_diagnostic(b, precision, t);
                Json j{{"n", r.n},
                       {"precision", r.digits},
                       {"s", format_hp(r.s.re, 20)},
                       {"root_residual", format_hp(r.root_residual)},
                       {"hadamard_residual", format_hp(r.hadamard_residual)},
                       {"product_residual", format_hp(r.product_residual)},
                       {"tolerance", format_hp(r.tolerance)},
                       {"hadamard_identity", r.hadamard_ok()},
                       {"product_identity", r.product_ok()}};
                em.emit(out, j,
                        "W+ o W- = J: " + std::string(r.hadamard_ok() ? "holds" : "FAILS") + " (residual " + format_hp(r.hadamard_residual) +
                            ")\nW+ W- = 4nI: " + (r.product_ok() ? "holds" : "FAILS") + " (residual " + format_hp(r.product_residual) + ")\n");
                return r.ok() ? ok : check_failed;
            };
        });
    }

    // reduce
    std::string graph_path;
    ReductionOptions ropt;
    std::string strategy = "heuristic";
    {
        auto* r = app.add_subcommand("reduce", "Reduce a plane graph to a point");
        r->add_option("graph", graph_path, "Graph JSON (embedded or abstract)")->required();
        r->add_option("--budget", ropt.budget, "Move applications allowed")->check(CLI::PositiveNumber);
        r->add_option("--strategy", strategy, "heuristic or random")->check(CLI::IsMember({"heuristic", "random"}));
        r->add_option("--seed", ropt.seed, "Seed for the random strategy");
        add_output(r);
        r->callback([&] {
            action = [&]() -> int {
                const Json j = detail::read_json(graph_path);
                const PlaneGraph g = has_rotation(j) ? plane_graph_from_json(j) : embed_planar(abstract_graph_from_json(j));
                ropt.strategy = strategy == "random" ? ReductionStrategy::random : ReductionStrategy::heuristic;
                const auto trace = reduce_to_point(g, ropt);
                const auto check = verify_trace(g, trace);
                Json res{{"graph", graph_to_json(g)}, {"trace", trace_to_json(trace)}, {"verified", check.ok}};
                if (!check.ok) res["failure"] = check.message;
                em.emit(out, res,
                        std::to_string(trace.moves.size()) + " moves; trace " + (check.ok ? "verified" : "REJECTED: " + check.message) + "\n");
                return check.ok ? ok : check_failed;
            };
        });
    }

    // hom
    std::vector<int> selector{1};
    double cost_cap = 1e9;
    bool algebraic = false, oracle = false;
    {
        auto* h = app.add_subcommand("hom", "Count homomorphisms into a graph of a scheme");
        h->add_option("--scheme", scheme_path, "Scheme JSON")->required();
        h->add_option("--graph", graph_path, "Pattern graph JSON")->required();
        h->add_option("--selector", selector, "Relations forming the target graph")->delimiter(',');
        auto* fa = h->add_flag("--algebraic", algebraic, "From the parameter tables (default)");
        auto* fo = h->add_flag("--oracle", oracle, "By variable elimination over the scheme's points");
        fa->excludes(fo);
        h->add_option("--cost-cap", cost_cap, "Largest oracle table size")->check(CLI::PositiveNumber);
        h->add_option("--budget", ropt.budget, "Reduction move budget")->check(CLI::PositiveNumber);
        add_output(h);
        add_jobs(h);
        h->callback([&] {
            action = [&]() -> int {
                const auto s = scheme_from_json(detail::read_json(scheme_path));
                for (int i : selector)
                    if (i < 1 || i > s.classes()) throw InputError("selector index " + std::to_string(i) + " outside 1.." + std::to_string(s.classes()));
                const auto f = abstract_graph_from_json(detail::read_json(graph_path));
                Rational v;
                if (oracle) v = Rational(hom_count_oracle(ConcreteGraph::from_scheme(s, selector), f, cost_cap));
                else v = hom_count_algebraic(s, compute_tables(s, jobs), selector, f, ScaffoldOptions{ropt});
                em.emit(out, Json{{"method", oracle ? "oracle" : "algebraic"}, {"selector", selector}, {"hom", to_fraction_string(v)}},
                        v.get_num().get_str() + "\n");
                return ok;
            };
        });
    }

    // hom-poly
    std::vector<int> orders;
    int holdout = 0;
    {
        auto* hp = app.add_subcommand("hom-poly", "Homomorphism counts into Hadamard graphs as a polynomial in n");
        hp->add_option("--graph", graph_path, "Pattern graph JSON")->required();
        hp->add_option("--orders", orders, "Interpolation orders n")->delimiter(',')->required();
        hp->add_option("--holdout", holdout, "Validation order n")->required()->check(CLI::PositiveNumber);
        hp->add_option("--selector", selector, "Relations forming the target graph")->delimiter(',');
        hp->add_option("--budget", ropt.budget, "Reduction move budget")->check(CLI::PositiveNumber);
        add_output(hp);
        add_jobs(hp);
        hp->callback([&] {
            action = [&]() -> int {
                const auto f = abstract_graph_from_json(detail::read_json(graph_path));
                HomPolynomialOptions o;
                o.selector = selector;
                o.jobs = jobs;
                o.scaffold.reduction = ropt;
                HomPolynomial p;
                try {
                    p = hom_polynomial(f, orders, holdout, o);
                } catch (const PolynomialMismatch& e) {
                    em.emit(out, Json{{"error", e.what()}}, std::string(e.what()) + "\n");
                    return check_failed;
                }
                Json samples = Json::array();
                for (const auto& [n, v] : p.samples) samples.push_back({n, to_fraction_string(v)});
                em.emit(out,
                        Json{{"coefficients", detail::poly_to_json(p.poly)},
                             {"samples", samples},
                             {"holdout", p.holdout},
                             {"holdout_value", to_fraction_string(p.holdout_value)}},
                        p.poly.to_string("n") + "\n");
                return ok;
            };
        });
    }

    // certify
    std::vector<std::string> pair;
    bool no_corpus = false;
    std::size_t spot = 3;
    {
        auto* c = app.add_subcommand("certify", "Certify that two scheme graphs are quantum isomorphic");
        c->add_option("schemes", pair, "Scheme JSON files A and B")->expected(2)->required();
        c->add_option("--selector", selector, "Relations of A forming the graph")->delimiter(',');
        c->add_flag("--no-corpus", no_corpus, "Skip the homomorphism cross-check");
        c->add_option("--spot-checks", spot, "Corpus graphs also counted by the oracle");
        c->add_option("--cost-cap", cost_cap, "Largest oracle table size")->check(CLI::PositiveNumber);
        c->add_option("--tolerance", tolerance, "Tolerance for Krein positivity")->check(CLI::PositiveNumber);
        c->add_option("--budget", ropt.budget, "Reduction move budget")->check(CLI::PositiveNumber);
        add_output(c);
        add_jobs(c);
        c->callback([&] {
            action = [&]() -> int {
                const auto a = scheme_from_json(detail::read_json(pair[0]));
                const auto b = scheme_from_json(detail::read_json(pair[1]));
                CertifyOptions o;
                o.cross_check = !no_corpus;
                o.oracle_spot_checks = spot;
                o.cost_cap = cost_cap;
                o.jobs = jobs;
                o.krein_tolerance = tolerance;
                o.scaffold.reduction = ropt;
                for (int i : selector)
                    if (i < 1 || i > a.classes()) throw InputError("selector index " + std::to_string(i) + " outside 1.." + std::to_string(a.classes()));
                const auto cert = certify_quantum_isomorphism(a, selector, b, o);
                std::string sum = cert.verdict();
                if (cert.pass)
                    sum += ": relation ordering " + detail::join(cert.matching->pi) + ", selector {" + detail::join(cert.selector_a) +
                           "} -> {" + detail::join(cert.selector_b) + "}, " + std::to_string(cert.cross_checks.size()) +
                           " corpus graphs agree";
                else
                    sum += " (" + cert.failed_stage + "): " + cert.witness;
                em.emit(out, certificate_to_json(cert), sum + "\n");
                return cert.pass ? ok : check_failed;
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return usage;
    }
    try {
        return action();
    } catch (const BudgetExhausted& e) {
        err << "budget exhausted: " << e.what() << "\n";
        return exhausted;
    } catch (const CostCapExceeded& e) {
        err << "cost cap exceeded: " << e.what() << "\n";
        return exhausted;
    } catch (const PolynomialMismatch& e) {
        err << e.what() << "\n";
        return check_failed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }
}

}  // namespace qiso::cli

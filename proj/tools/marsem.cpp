// marsem: normality of marginal semigroups of binary graph models, with
// machine-checkable certificates, plus general marginal-cone tooling.

#include "marsem/errors.hpp"
#include "marsem/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace marsem;

namespace {

constexpr int kExitNormal = 0;
constexpr int kExitNotNormal = 10;
constexpr int kExitUnknown = 20;
constexpr int kExitInput = 2;
constexpr int kExitGuard = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Json parse_json(const std::string& path) {
    try {
        return Json::parse(slurp(path), nullptr, true, true);
    } catch (const Json::parse_error& e) {
        throw input_error("bad JSON in '" + path + "': " + e.what());
    }
}

struct Options {
    std::string model_path;
    std::string table_path;
    long max_n = 4;
    int beta = 3;
    int workers = 1;
    std::string format = "text";
};

bool is_graph_model(const MarginalSpace& sp) {
    for (const Face& f : sp.complex().faces())
        if (f.size() > 2) return false;
    return true;
}

void print_face(std::ostream& out, const Face& f) {
    out << '{';
    for (std::size_t i = 0; i < f.size(); ++i) out << (i ? "," : "") << f[i];
    out << '}';
}

void print_hole_text(std::ostream& out, const HoleReport& h) {
    out << "hole at level " << to_string(h.level) << ":";
    const MarginalSpace& sp = *h.point.space();
    for (std::size_t id = 0; id < sp.face_count(); ++id) {
        for (std::size_t r = 0; r < sp.reduced_block(id); ++r) {
            out << ' ';
            print_face(out, sp.face(id));
            out << '=' << to_string(h.point.coords()[sp.reduced_offset(id) + r]);
        }
    }
    out << "\n  semigroup search: exhausted, cell bound "
        << to_string(h.semigroup_search.cell_bound) << ", "
        << h.semigroup_search.nodes << " nodes\n";
}

int cmd_check(const Options& opt) {
    SpacePtr sp = load_model(parse_json(opt.model_path));
    if (sp->shape().is_binary() && is_graph_model(*sp)) {
        Graph g = Graph::from_complex(sp->complex());
        NormalityCertificate cert = classify_normality(g, sp->shape(), opt.beta);
        if (opt.format == "json") {
            std::cout << certificate_json(cert).dump(2) << "\n";
        } else if (cert.verdict == NormalityCertificate::Verdict::Normal) {
            std::cout << "normal\n";
            const NormalEvidence& ev = *cert.normal;
            std::cout << "  chordal completion adds " << ev.elimination.fill_edges.size()
                      << " fill edge(s); decomposition has "
                      << decomposition_leaves(ev.tree).size() << " clique leaf/leaves\n";
            for (const EdgeDeletionStep& step : ev.deletions) {
                std::cout << "  delete fill edge {" << step.edge.first << ","
                          << step.edge.second << "}: facepopper "
                          << to_string(step.report.verdict) << " over "
                          << step.system_rows << " facet rows\n";
            }
        } else {
            std::cout << "not normal\n  branch sets:";
            for (const auto& part : cert.not_normal->branch_sets) {
                std::cout << ' ';
                print_face(std::cout, part);
            }
            std::cout << "\n  minor ops: " << cert.not_normal->ops.size() << "\n  ";
            print_hole_text(std::cout, cert.not_normal->hole);
        }
        return cert.verdict == NormalityCertificate::Verdict::Normal ? kExitNormal
                                                                     : kExitNotNormal;
    }

    // not a binary graph model: bounded hole search only
    auto holes = find_holes(sp, Int(opt.max_n), opt.workers);
    NormalityCertificate cert;
    if (holes.empty()) {
        cert.verdict = NormalityCertificate::Verdict::Unknown;
        cert.searched_bound = opt.max_n;
        if (opt.format == "json") std::cout << certificate_json(cert).dump(2) << "\n";
        else
            std::cout << "unknown: no holes up to level " << opt.max_n
                      << "; the binary-graph certificate does not apply to this model\n";
        return kExitUnknown;
    }
    if (opt.format == "json") {
        Json out;
        out["verdict"] = "not_normal";
        Json hs = Json::array();
        for (const auto& h : holes) hs.push_back(hole_json(h));
        out["holes"] = hs;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "not normal (" << holes.size() << " hole(s) up to level "
                  << opt.max_n << ")\n";
        for (const auto& h : holes) {
            std::cout << "  ";
            print_hole_text(std::cout, h);
        }
    }
    return kExitNotNormal;
}

int cmd_holes(const Options& opt) {
    SpacePtr sp = load_model(parse_json(opt.model_path));
    auto holes = find_holes(sp, Int(opt.max_n), opt.workers);
    if (opt.format == "json") {
        Json out = Json::array();
        for (const auto& h : holes) out.push_back(hole_json(h));
        std::cout << out.dump(2) << "\n";
    } else {
        if (holes.empty()) {
            std::cout << "no holes up to level " << opt.max_n << "\n";
        } else {
            for (const auto& h : holes) print_hole_text(std::cout, h);
        }
    }
    return 0;
}

int cmd_facets(const Options& opt) {
    std::string content = slurp(opt.model_path);
    Graph g = load_graph_text_or_json(content);
    if (g.vertices().size() > 12)
        throw guard_error("facet generation is limited to 12 vertices");

    TableShape shape{std::vector<int>(g.vertices().size(), 2)};
    {
        // a model file may carry its own shape; facets require binary
        std::size_t first = content.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && content[first] == '{') {
            SpacePtr sp = load_model(parse_json(opt.model_path));
            shape = sp->shape();
        }
    }

    bool minor_free = is_k4_minor_free(g);
    InequalitySystem sys = box_inequalities(g, shape);
    InequalitySystem cyc = cycle_inequalities(g, shape);
    std::size_t box_count = sys.rows.size();
    for (auto& row : cyc.rows) sys.rows.push_back(std::move(row));

    std::vector<ReducedMarginalVector> gens;
    for (const auto& gen : generators(sys.space)) gens.push_back(reduce_coords(gen));
    auto reports = certify_facets(sys, gens, sys.space->reduced_dim());

    if (opt.format == "json") {
        Json out;
        out["k4_minor_free"] = minor_free;
        if (!minor_free)
            out["warning"] = "graph has a K4 minor; the system is valid but need "
                             "not describe the full cone";
        Json rows = Json::array();
        for (std::size_t r = 0; r < sys.rows.size(); ++r) {
            Json row = inequality_json(*sys.space, sys.rows[r]);
            row["kind"] = r < box_count ? "box" : "cycle";
            row["valid"] = reports[r].valid;
            row["facet"] = reports[r].facet;
            row["tight_rank"] = reports[r].tight_rank;
            rows.push_back(row);
        }
        out["inequalities"] = rows;
        std::cout << out.dump(2) << "\n";
    } else {
        if (!minor_free)
            std::cout << "warning: graph has a K4 minor; the system is valid but need "
                         "not describe the full cone\n";
        std::cout << box_count << " box + " << (sys.rows.size() - box_count)
                  << " cycle inequalities over " << sys.space->reduced_dim()
                  << " reduced coordinates\n";
        for (std::size_t r = 0; r < sys.rows.size(); ++r) {
            const MarginalSpace& sp = *sys.space;
            std::cout << (r < box_count ? "box  " : "cycle");
            std::cout << (reports[r].valid ? "  valid" : "  INVALID");
            std::cout << (reports[r].facet ? "  facet " : "         ");
            bool first = true;
            for (std::size_t id = 0; id < sp.face_count(); ++id) {
                for (std::size_t k = 0; k < sp.reduced_block(id); ++k) {
                    const Int& c = sys.rows[r].coeffs[sp.reduced_offset(id) + k];
                    if (c == 0) continue;
                    if (!first) std::cout << " + ";
                    first = false;
                    std::cout << to_string(c) << "*p";
                    print_face(std::cout, sp.face(id));
                }
            }
            std::cout << " >= 0\n";
        }
    }
    return 0;
}

int cmd_minor(const Options& opt) {
    Graph g = load_graph_text_or_json(slurp(opt.model_path));
    auto branch_sets = find_k4_branch_sets(g);
    if (opt.format == "json") {
        Json out;
        out["k4_minor_free"] = !branch_sets.has_value();
        if (branch_sets) {
            Json bs = Json::array();
            for (const auto& part : *branch_sets) bs.push_back(Json(part));
            out["branch_sets"] = bs;
            Json ops = Json::array();
            for (const MinorOp& op : minor_sequence_to_k4(g, *branch_sets))
                ops.push_back(minor_op_json(op));
            out["minor_ops"] = ops;
        } else {
            EliminationResult e = eliminate_tw2(g);
            out["elimination_order"] = Json(e.order);
            Json fills = Json::array();
            for (const Edge& f : e.fill_edges)
                fills.push_back(Json::array({f.first, f.second}));
            out["fill_edges"] = fills;
        }
        std::cout << out.dump(2) << "\n";
    } else if (branch_sets) {
        std::cout << "K4 minor found; branch sets:";
        for (const auto& part : *branch_sets) {
            std::cout << ' ';
            print_face(std::cout, part);
        }
        std::cout << "\nminor ops:\n";
        for (const MinorOp& op : minor_sequence_to_k4(g, *branch_sets))
            std::cout << "  " << describe(op) << "\n";
    } else {
        EliminationResult e = eliminate_tw2(g);
        std::cout << "K4-minor-free; elimination order:";
        for (Vertex v : e.order) std::cout << ' ' << v;
        std::cout << "\nfill edges:";
        for (const Edge& f : e.fill_edges)
            std::cout << " {" << f.first << "," << f.second << "}";
        std::cout << "\n";
    }
    return 0;
}

int cmd_margin(const Options& opt) {
    SpacePtr sp = load_model(parse_json(opt.model_path));
    Table u = load_table(parse_json(opt.table_path));
    FullMarginalVector full = marginalize(u, sp);
    ReducedMarginalVector red = reduce_coords(full);
    if (opt.format == "json") {
        Json out;
        out["full"] = full_vector_json(full);
        out["reduced"] = reduced_vector_json(red);
        std::cout << out.dump(2) << "\n";
    } else {
        const MarginalSpace& space = *sp;
        std::cout << "full coordinates:\n";
        for (std::size_t id = 0; id < space.face_count(); ++id)
            for (std::size_t r = 0; r < space.full_block(id); ++r) {
                std::cout << "  p";
                print_face(std::cout, space.face(id));
                std::cout << '[';
                CellIndex idx = space.full_unrank(id, r);
                for (std::size_t q = 0; q < idx.size(); ++q)
                    std::cout << (q ? "," : "") << idx[q];
                std::cout << "] = " << to_string(full.coords()[space.full_offset(id) + r])
                          << "\n";
            }
        std::cout << "reduced coordinates:\n";
        for (std::size_t id = 0; id < space.face_count(); ++id)
            for (std::size_t r = 0; r < space.reduced_block(id); ++r) {
                std::cout << "  p";
                print_face(std::cout, space.face(id));
                std::cout << '[';
                CellIndex idx = space.reduced_unrank(id, r);
                for (std::size_t q = 0; q < idx.size(); ++q)
                    std::cout << (q ? "," : "") << idx[q];
                std::cout << "] = " << to_string(red.coords()[space.reduced_offset(id) + r])
                          << "\n";
            }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"normality of marginal semigroups, with certificates"};
    app.require_subcommand(1);

    Options opt;

    auto add_common = [&](CLI::App* sub, bool with_maxn) {
        sub->add_option("--format", opt.format, "output format: text or json")
            ->check(CLI::IsMember({"text", "json"}));
        if (with_maxn)
            sub->add_option("--max-n", opt.max_n, "hole search bound on the sample size")
                ->check(CLI::NonNegativeNumber);
    };

    CLI::App* check = app.add_subcommand("check", "decide normality of a model");
    check->add_option("model", opt.model_path, "model JSON file")->required();
    check->add_option("--beta", opt.beta, "facepopper brute-force bound")
        ->check(CLI::PositiveNumber);
    check->add_option("--workers", opt.workers, "parallel hole enumeration workers")
        ->check(CLI::PositiveNumber);
    add_common(check, true);

    CLI::App* holes = app.add_subcommand("holes", "list holes up to a sample-size bound");
    holes->add_option("model", opt.model_path, "model JSON file")->required();
    holes->add_option("--workers", opt.workers, "parallel hole enumeration workers")
        ->check(CLI::PositiveNumber);
    add_common(holes, true);

    CLI::App* facets = app.add_subcommand("facets", "box and cycle inequalities with flags");
    facets->add_option("graph", opt.model_path, "graph text file or model JSON")->required();
    add_common(facets, false);

    CLI::App* minor = app.add_subcommand("minor", "K4-minor report");
    minor->add_option("graph", opt.model_path, "graph text file or model JSON")->required();
    add_common(minor, false);

    CLI::App* margin = app.add_subcommand("margin", "marginal vector of a table");
    margin->add_option("table", opt.table_path, "table JSON file")->required();
    margin->add_option("model", opt.model_path, "model JSON file")->required();
    add_common(margin, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitInput;
    }

    try {
        if (check->parsed()) return cmd_check(opt);
        if (holes->parsed()) return cmd_holes(opt);
        if (facets->parsed()) return cmd_facets(opt);
        if (minor->parsed()) return cmd_minor(opt);
        if (margin->parsed()) return cmd_margin(opt);
    } catch (const guard_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitGuard;
    } catch (const internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 70;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}

#include "chowdiag/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "chowdiag/basedring.hpp"
#include "chowdiag/chernclass.hpp"
#include "chowdiag/errors.hpp"
#include "chowdiag/gtcomb.hpp"
#include "chowdiag/quiverrep.hpp"
#include "chowdiag/resolutions.hpp"

namespace chowdiag {
namespace {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------- schema

[[noreturn]] void fail_schema(const std::string& msg) { throw SchemaError(msg); }

ordered_json load_input(const std::string& path) {
    std::string text;
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream in(path);
        if (!in) fail_schema("cannot open input file '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail_schema(std::string("input is not valid JSON: ") + e.what());
    }
}

long long require_integer(const ordered_json& j, const std::string& what) {
    if (!j.is_number_integer())
        fail_schema(what + " must be a JSON integer (floats are rejected)");
    return j.get<long long>();
}

Rational parse_rational(const ordered_json& j, const std::string& what) {
    if (j.is_number_integer()) return to_rational(j.get<long long>());
    if (j.is_string()) return rational_from_string(j.get<std::string>());
    fail_schema(what + " must be an integer or a rational string \"n/d\"");
}

Quiver parse_quiver(const ordered_json& in) {
    if (!in.is_object()) fail_schema("input must be a JSON object");
    if (!in.contains("vertices") || !in.at("vertices").is_array())
        fail_schema("\"vertices\" must be an array of vertex names");
    std::vector<std::string> vertices;
    for (const auto& v : in.at("vertices")) {
        if (!v.is_string()) fail_schema("vertex names must be strings");
        vertices.push_back(v.get<std::string>());
    }
    std::vector<Quiver::ArrowSpec> arrows;
    if (in.contains("arrows")) {
        if (!in.at("arrows").is_array()) fail_schema("\"arrows\" must be an array");
        for (const auto& a : in.at("arrows")) {
            if (!a.is_object() || !a.contains("id") || !a.contains("tail") ||
                !a.contains("head") || !a.at("id").is_string() || !a.at("tail").is_string() ||
                !a.at("head").is_string())
                fail_schema("each arrow needs string fields \"id\", \"tail\", \"head\"");
            arrows.push_back({a.at("id").get<std::string>(), a.at("tail").get<std::string>(),
                              a.at("head").get<std::string>()});
        }
    }
    return Quiver(std::move(vertices), std::move(arrows));
}

DimVector parse_dim(const ordered_json& in, const std::string& key, const Quiver& q) {
    if (!in.contains(key) || !in.at(key).is_object())
        fail_schema("\"" + key + "\" must be an object mapping vertex names to integers");
    const auto& obj = in.at(key);
    DimVector d(q.vertices().size(), 0);
    for (const auto& [k, v] : obj.items()) {
        long long val = require_integer(v, "\"" + key + "\" entry '" + k + "'");
        if (val < 0) fail_schema("\"" + key + "\" entry '" + k + "' must be nonnegative");
        d[q.vertex_index(k)] = val;
    }
    for (const auto& vid : q.vertices())
        if (!obj.contains(vid)) fail_schema("\"" + key + "\" is missing vertex '" + vid + "'");
    return d;
}

FieldTag parse_field(const ordered_json& in) {
    if (!in.contains("field")) return FieldTag{std::nullopt};
    const auto& f = in.at("field");
    if (!f.is_object() || !f.contains("kind") || !f.at("kind").is_string())
        fail_schema("\"field\" must be {\"kind\":\"Q\"} or {\"kind\":\"Fp\",\"p\":prime}");
    std::string kind = f.at("kind").get<std::string>();
    if (kind == "Q") return FieldTag{std::nullopt};
    if (kind == "Fp") {
        if (!f.contains("p")) fail_schema("field \"Fp\" needs an integer \"p\"");
        long long p = require_integer(f.at("p"), "field \"p\"");
        if (p < 2) fail_schema("field \"p\" must be at least 2");
        return FieldTag{static_cast<unsigned long>(p)};
    }
    fail_schema("field kind must be \"Q\" or \"Fp\"");
}

std::map<std::string, ExactMatrix> parse_matrices(const ordered_json& in, const std::string& key,
                                                  const Quiver& q, const DimVector& dims,
                                                  const FieldTag& field) {
    if (!in.contains(key) || !in.at(key).is_object())
        fail_schema("\"" + key + "\" must be an object mapping arrow ids to matrices");
    std::map<std::string, ExactMatrix> out;
    for (const auto& arr : q.arrows()) {
        if (!in.at(key).contains(arr.id))
            fail_schema("\"" + key + "\" is missing arrow '" + arr.id + "'");
        const auto& rowsj = in.at(key).at(arr.id);
        std::size_t er = static_cast<std::size_t>(dims[arr.head]);
        std::size_t ec = static_cast<std::size_t>(dims[arr.tail]);
        if (!rowsj.is_array() || rowsj.size() != er)
            fail_schema("matrix '" + arr.id + "' must have " + std::to_string(er) + " rows");
        ExactMatrix m(er, ec, field.p);
        for (std::size_t i = 0; i < er; i++) {
            const auto& rowj = rowsj.at(i);
            if (!rowj.is_array() || rowj.size() != ec)
                fail_schema("matrix '" + arr.id + "' row " + std::to_string(i) + " must have " +
                            std::to_string(ec) + " entries");
            for (std::size_t j = 0; j < ec; j++)
                m.set(i, j, parse_rational(rowj.at(j), "matrix '" + arr.id + "' entry"));
        }
        out.emplace(arr.id, std::move(m));
    }
    return out;
}

Weight parse_weight(const ordered_json& in, const std::string& key, const Quiver& q) {
    if (!in.contains(key) || !in.at(key).is_object())
        fail_schema("\"" + key + "\" must be an object mapping vertex names to rationals");
    const auto& obj = in.at(key);
    Weight w(q.vertices().size(), Rational(0));
    for (const auto& [k, v] : obj.items())
        w[q.vertex_index(k)] = parse_rational(v, "\"" + key + "\" entry '" + k + "'");
    for (const auto& vid : q.vertices())
        if (!obj.contains(vid)) fail_schema("\"" + key + "\" is missing vertex '" + vid + "'");
    return w;
}

HilbertFunction parse_hilbert(const std::string& arg) {
    std::vector<long long> vals;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size())
            fail_schema("--T expects a comma-separated integer list, got '" + arg + "'");
        vals.push_back(v);
    }
    if (vals.empty()) fail_schema("--T must contain at least one value");
    return HilbertFunction(std::move(vals));
}

// --------------------------------------------------------- serialization

ordered_json quiver_to_json(const Quiver& q) {
    ordered_json o;
    o["vertices"] = q.vertices();
    ordered_json arrows = ordered_json::array();
    for (const auto& a : q.arrows()) {
        ordered_json aj;
        aj["id"] = a.id;
        aj["tail"] = q.vertices()[a.tail];
        aj["head"] = q.vertices()[a.head];
        arrows.push_back(std::move(aj));
    }
    o["arrows"] = std::move(arrows);
    return o;
}

ordered_json dim_to_json(const Quiver& q, const DimVector& d) {
    ordered_json o = ordered_json::object();
    for (std::size_t i = 0; i < q.vertices().size(); i++) o[q.vertices()[i]] = d[i];
    return o;
}

ordered_json weight_to_json(const Quiver& q, const Weight& w) {
    ordered_json o = ordered_json::object();
    for (std::size_t i = 0; i < q.vertices().size(); i++)
        o[q.vertices()[i]] = rational_to_string(w[i]);
    return o;
}

ordered_json field_to_json(const FieldTag& f) {
    ordered_json o;
    o["kind"] = f.p ? "Fp" : "Q";
    if (f.p) o["p"] = *f.p;
    return o;
}

ordered_json element_to_json(const RingElement& x) {
    ordered_json o;
    o["text"] = x.to_string();
    ordered_json coeffs = ordered_json::object();
    for (const auto& [i, c] : x.coeffs()) coeffs[x.ring()->name(i)] = rational_to_string(c);
    o["coefficients"] = std::move(coeffs);
    return o;
}

// ----------------------------------------------------------- run reports

struct Report {
    ordered_json inputs = ordered_json::object();
    ordered_json results = ordered_json::object();
    ordered_json verdicts = ordered_json::object();
};

void set_verdict(Report& r, const std::string& name, bool ok) {
    r.verdicts[name] = ok ? "pass" : "fail";
}

// ------------------------------------------------------- quiver commands

Report do_quiver_euler(const ordered_json& in) {
    Report r;
    Quiver q = parse_quiver(in);
    DimVector a = parse_dim(in, "dim", q);
    DimVector b = parse_dim(in, "dim2", q);
    r.inputs["quiver"] = quiver_to_json(q);
    r.inputs["dim"] = dim_to_json(q, a);
    r.inputs["dim2"] = dim_to_json(q, b);
    r.results["euler"] = euler_form(q, a, b);
    return r;
}

Report do_quiver_moduli(const ordered_json& in) {
    Report r;
    Quiver q = parse_quiver(in);
    DimVector a = parse_dim(in, "dim", q);
    r.inputs["quiver"] = quiver_to_json(q);
    r.inputs["dim"] = dim_to_json(q, a);
    r.results["moduli_dim"] = moduli_dimension(q, a);
    return r;
}

Report do_quiver_paths(const ordered_json& in) {
    Report r;
    Quiver q = parse_quiver(in);
    r.inputs["quiver"] = quiver_to_json(q);
    ordered_json table = ordered_json::object();
    for (std::size_t i = 0; i < q.vertices().size(); i++) {
        ordered_json row = ordered_json::object();
        for (std::size_t j = 0; j < q.vertices().size(); j++)
            row[q.vertices()[j]] = q.path_count(i, j);
        table[q.vertices()[i]] = std::move(row);
    }
    r.results["paths"] = std::move(table);
    return r;
}

Report do_quiver_homext(const ordered_json& in) {
    Report r;
    Quiver q = parse_quiver(in);
    FieldTag f = parse_field(in);
    DimVector da = parse_dim(in, "dim", q);
    Representation e(q, f, da, parse_matrices(in, "matrices", q, da, f));
    DimVector db = da;
    bool two = in.contains("dim2") || in.contains("matrices2");
    std::optional<Representation> second;
    if (two) {
        db = parse_dim(in, "dim2", q);
        second.emplace(q, f, db, parse_matrices(in, "matrices2", q, db, f));
    }
    const Representation& g = two ? *second : e;
    r.inputs["quiver"] = quiver_to_json(q);
    r.inputs["field"] = field_to_json(f);
    r.inputs["dim"] = dim_to_json(q, da);
    if (two) r.inputs["dim2"] = dim_to_json(q, db);
    HomExt he = hom_ext(e, g);
    r.results["hom"] = he.hom;
    r.results["ext1"] = he.ext1;
    if (q.acyclic()) {
        long long eu = euler_form(q, da, db);
        r.results["euler"] = eu;
        set_verdict(r, "hom_minus_ext_equals_euler", he.hom - he.ext1 == eu);
    }
    return r;
}

Report do_quiver_stable(const ordered_json& in) {
    Report r;
    Quiver q = parse_quiver(in);
    FieldTag f = parse_field(in);
    DimVector d = parse_dim(in, "dim", q);
    Representation e(q, f, d, parse_matrices(in, "matrices", q, d, f));
    Weight theta = parse_weight(in, "theta", q);
    r.inputs["quiver"] = quiver_to_json(q);
    r.inputs["field"] = field_to_json(f);
    r.inputs["dim"] = dim_to_json(q, d);
    r.inputs["theta"] = weight_to_json(q, theta);
    r.results["stable"] = is_theta_stable(e, theta);
    return r;
}

// ----------------------------------------------------- diagonal commands

void fill_complex_results(Report& r, const DiagonalRun& run, long long dim) {
    auto entries = build_L_complex(run.resolution, run.provider, run.square);
    ordered_json ranks = ordered_json::object();
    for (const auto& e : entries) ranks[std::to_string(e.p)] = e.cls.rank();
    long long vr = virtual_rank(run.resolution, run.provider);
    r.results["dim"] = dim;
    r.results["l_ranks"] = std::move(ranks);
    r.results["virtual_rank"] = vr;
    set_verdict(r, "virtual_rank_law", vr == dim - 1);
}

void fill_delta_results(Report& r, const DiagonalRun& run) {
    RingElement delta = diagonal_class(run.resolution, run.provider, run.square);
    RingElement oracle = kunneth_diagonal(run.square);
    r.results["delta"] = element_to_json(delta);
    r.results["oracle"] = element_to_json(oracle);
    set_verdict(r, "delta_matches_oracle", delta == oracle);
}

Report do_diagonal_pn(int n) {
    if (n < 1) throw InvalidArgument("--n must be at least 1");
    Report r;
    r.inputs["n"] = n;
    DiagonalRun run = diagonal_setup_pn(n);
    fill_complex_results(r, run, run.base->top_degree());
    fill_delta_results(r, run);
    return r;
}

Report do_diagonal_grass() {
    Report r;
    r.inputs["k"] = 2;
    r.inputs["n"] = 4;
    DiagonalRun run = diagonal_setup_grassmannian();
    fill_complex_results(r, run, run.base->top_degree());
    fill_delta_results(r, run);
    return r;
}

Report do_diagonal_gt(const std::string& tArg) {
    HilbertFunction t = parse_hilbert(tArg);
    Report r;
    r.inputs["T"] = t.values();
    long long dim = gt_dimension(t);
    DiagonalRun run = diagonal_setup_gt(t.values());
    fill_complex_results(r, run, dim);
    return r;
}

Report do_diagonal_p2(long long rr, long long c1, long long chi, long long m) {
    P2Config cfg(rr, c1, chi, m);
    Report r;
    r.inputs["r"] = rr;
    r.inputs["c1"] = c1;
    r.inputs["chi"] = chi;
    r.inputs["m"] = m;
    long long dim = p2_moduli_dimension(cfg);
    DiagonalRun run = diagonal_setup_p2(cfg);
    fill_complex_results(r, run, dim);
    Quiver q = p2_quiver();
    auto al = cfg.alpha();
    auto th = cfg.theta();
    r.results["alpha"] = dim_to_json(q, DimVector(al.begin(), al.end()));
    ordered_json thj = ordered_json::object();
    for (std::size_t i = 0; i < q.vertices().size(); i++) thj[q.vertices()[i]] = th[i];
    r.results["theta"] = std::move(thj);
    return r;
}

// ----------------------------------------------------------- gt commands

Report do_gt_cells(const std::string& tArg) {
    HilbertFunction t = parse_hilbert(tArg);
    auto cells = enumerate_staircases(t);
    Report r;
    r.inputs["T"] = t.values();
    ordered_json arr = ordered_json::array();
    for (const auto& s : cells) arr.push_back(s.heights());
    r.results["count"] = cells.size();
    r.results["staircases"] = std::move(arr);
    return r;
}

Report do_gt_tangent(const std::string& tArg) {
    HilbertFunction t = parse_hilbert(tArg);
    auto cells = enumerate_staircases(t);
    long long expected = gt_dimension(t);
    Report r;
    r.inputs["T"] = t.values();
    ordered_json arr = ordered_json::array();
    bool constant = true;
    for (const auto& s : cells) {
        long long td = tangent_dimension(s);
        if (td != expected) constant = false;
        ordered_json cell;
        cell["heights"] = s.heights();
        cell["tangent"] = td;
        arr.push_back(std::move(cell));
    }
    r.results["gt_dimension"] = expected;
    r.results["cells"] = std::move(arr);
    set_verdict(r, "tangent_constant_equals_formula", constant);
    return r;
}

Report do_gt_quiver(const std::string& tArg) {
    HilbertFunction t = parse_hilbert(tArg);
    GTQuiverData data = gt_quiver(t);
    Report r;
    r.inputs["T"] = t.values();
    ordered_json o = quiver_to_json(data.quiver);
    ordered_json rels = ordered_json::array();
    for (const auto& rel : data.relations) {
        ordered_json rj;
        rj["lhs"] = std::vector<std::string>{rel.lhs[0], rel.lhs[1]};
        rj["rhs"] = std::vector<std::string>{rel.rhs[0], rel.rhs[1]};
        rels.push_back(std::move(rj));
    }
    o["relations"] = std::move(rels);
    o["alpha"] = dim_to_json(data.quiver, data.alpha);
    o["theta"] = weight_to_json(data.quiver, data.theta);
    r.results = std::move(o);
    return r;
}

// ------------------------------------------------------------- reporting

std::string error_type(const Error& e) {
    if (dynamic_cast<const SchemaError*>(&e)) return "SchemaError";
    if (dynamic_cast<const InvalidArgument*>(&e)) return "InvalidArgument";
    if (dynamic_cast<const InvalidConfig*>(&e)) return "InvalidConfig";
    if (dynamic_cast<const NotAdmissible*>(&e)) return "NotAdmissible";
    if (dynamic_cast<const NonUnitT0*>(&e)) return "NonUnitT0";
    if (dynamic_cast<const QuiverMismatch*>(&e)) return "QuiverMismatch";
    if (dynamic_cast<const FieldMismatch*>(&e)) return "FieldMismatch";
    if (dynamic_cast<const RingMismatch*>(&e)) return "RingMismatch";
    if (dynamic_cast<const RankMismatch*>(&e)) return "RankMismatch";
    if (dynamic_cast<const NegativeRank*>(&e)) return "NegativeRank";
    if (dynamic_cast<const WeightNotOrthogonal*>(&e)) return "WeightNotOrthogonal";
    if (dynamic_cast<const UnsupportedInstance*>(&e)) return "UnsupportedInstance";
    if (dynamic_cast<const CyclicQuiver*>(&e)) return "CyclicQuiver";
    if (dynamic_cast<const ProviderMismatch*>(&e)) return "ProviderMismatch";
    if (dynamic_cast<const NotIntegral*>(&e)) return "NotIntegral";
    if (dynamic_cast<const NotUnimodular*>(&e)) return "NotUnimodular";
    return "Error";
}

int exit_code_for(const Error& e) {
    if (dynamic_cast<const UnsupportedInstance*>(&e) || dynamic_cast<const CyclicQuiver*>(&e) ||
        dynamic_cast<const ProviderMismatch*>(&e))
        return 3;
    return 2;
}

void render_pretty(const ordered_json& report, std::ostream& out) {
    out << "command: " << report.at("command").get<std::string>() << "\n";
    for (const char* section : {"inputs", "results", "verdicts"}) {
        if (!report.contains(section) || report.at(section).empty()) continue;
        out << section << ":\n";
        for (const auto& [k, v] : report.at(section).items()) {
            out << "  " << k << " = ";
            if (v.is_string())
                out << v.get<std::string>();
            else
                out << v.dump();
            out << "\n";
        }
    }
    if (report.contains("error"))
        out << "error: " << report.at("error").at("type").get<std::string>() << ": "
            << report.at("error").at("message").get<std::string>() << "\n";
    if (report.contains("timing_ms")) out << "timing_ms: " << report.at("timing_ms") << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact diagonal classes for quiver moduli, punctual Hilbert strata, and plane sheaf configurations"};
    app.name("chowdiag");
    bool timing = false, pretty = false;
    app.add_flag("--timing", timing, "append wall-clock timing_ms to the report");
    app.add_flag("--pretty", pretty, "render a human-readable report instead of JSON");
    app.require_subcommand(1);

    std::string command;
    std::function<Report()> action;

    auto* qcmd = app.add_subcommand("quiver", "quiver representation computations");
    qcmd->require_subcommand(1);
    std::string in_euler = "-", in_homext = "-", in_stable = "-", in_moduli = "-", in_paths = "-";
    auto* c_euler = qcmd->add_subcommand("euler", "Euler form of dim against dim2");
    c_euler->add_option("input", in_euler, "JSON input path ('-' reads stdin)");
    c_euler->callback([&] {
        command = "quiver euler";
        action = [&] { return do_quiver_euler(load_input(in_euler)); };
    });
    auto* c_homext = qcmd->add_subcommand("homext", "dim Hom and dim Ext^1 of two representations");
    c_homext->add_option("input", in_homext, "JSON input path ('-' reads stdin)");
    c_homext->callback([&] {
        command = "quiver homext";
        action = [&] { return do_quiver_homext(load_input(in_homext)); };
    });
    auto* c_stable = qcmd->add_subcommand("stable", "theta-stability of a representation");
    c_stable->add_option("input", in_stable, "JSON input path ('-' reads stdin)");
    c_stable->callback([&] {
        command = "quiver stable";
        action = [&] { return do_quiver_stable(load_input(in_stable)); };
    });
    auto* c_moduli = qcmd->add_subcommand("moduli-dim", "moduli dimension 1 - <dim, dim>");
    c_moduli->add_option("input", in_moduli, "JSON input path ('-' reads stdin)");
    c_moduli->callback([&] {
        command = "quiver moduli-dim";
        action = [&] { return do_quiver_moduli(load_input(in_moduli)); };
    });
    auto* c_paths = qcmd->add_subcommand("paths", "table of directed path counts");
    c_paths->add_option("input", in_paths, "JSON input path ('-' reads stdin)");
    c_paths->callback([&] {
        command = "quiver paths";
        action = [&] { return do_quiver_paths(load_input(in_paths)); };
    });

    auto* dcmd = app.add_subcommand("diagonal", "diagonal-class pipelines");
    dcmd->require_subcommand(1);
    int pn_n = 0;
    auto* c_pn = dcmd->add_subcommand("pn", "projective n-space");
    c_pn->add_option("--n", pn_n, "dimension of the projective space")->required();
    c_pn->callback([&] {
        command = "diagonal pn";
        action = [&] { return do_diagonal_pn(pn_n); };
    });
    auto* c_gr = dcmd->add_subcommand("grass", "the Grassmannian Gr(2,4)");
    c_gr->callback([&] {
        command = "diagonal grass";
        action = [] { return do_diagonal_grass(); };
    });
    std::string dgt_T;
    auto* c_dgt = dcmd->add_subcommand("gt", "rank bookkeeping for a Hilbert-function variety");
    c_dgt->add_option("--T", dgt_T, "comma-separated Hilbert function, e.g. 1,2,1")->required();
    c_dgt->callback([&] {
        command = "diagonal gt";
        action = [&] { return do_diagonal_gt(dgt_T); };
    });
    long long p2_r = 0, p2_c1 = 0, p2_chi = 0, p2_m = 0;
    auto* c_p2 = dcmd->add_subcommand("p2", "plane sheaf configuration");
    c_p2->add_option("--r", p2_r, "sheaf rank")->required();
    c_p2->add_option("--c1", p2_c1, "first Chern number")->required();
    c_p2->add_option("--chi", p2_chi, "Euler characteristic")->required();
    c_p2->add_option("--m", p2_m, "weight scale")->required();
    c_p2->callback([&] {
        command = "diagonal p2";
        action = [&] { return do_diagonal_p2(p2_r, p2_c1, p2_chi, p2_m); };
    });

    auto* gcmd = app.add_subcommand("gt", "Hilbert-function combinatorics");
    gcmd->require_subcommand(1);
    std::string gt_cells_T, gt_tangent_T, gt_quiver_T;
    auto* c_cells = gcmd->add_subcommand("cells", "staircase cells realizing T");
    c_cells->add_option("--T", gt_cells_T, "comma-separated Hilbert function")->required();
    c_cells->callback([&] {
        command = "gt cells";
        action = [&] { return do_gt_cells(gt_cells_T); };
    });
    auto* c_tangent = gcmd->add_subcommand("tangent", "tangent dimension at every cell");
    c_tangent->add_option("--T", gt_tangent_T, "comma-separated Hilbert function")->required();
    c_tangent->callback([&] {
        command = "gt tangent";
        action = [&] { return do_gt_tangent(gt_tangent_T); };
    });
    auto* c_gtq = gcmd->add_subcommand("quiver", "quiver-with-relations presentation");
    c_gtq->add_option("--T", gt_quiver_T, "comma-separated Hilbert function")->required();
    c_gtq->callback([&] {
        command = "gt quiver";
        action = [&] { return do_gt_quiver(gt_quiver_T); };
    });

    auto t0 = std::chrono::steady_clock::now();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }

    ordered_json report;
    report["command"] = command;
    int code = 0;
    try {
        Report r = action();
        report["inputs"] = std::move(r.inputs);
        report["results"] = std::move(r.results);
        report["verdicts"] = r.verdicts;
        for (const auto& [k, v] : r.verdicts.items())
            if (v.get<std::string>() == "fail") code = 1;
    } catch (const Error& e) {
        ordered_json eo;
        eo["type"] = error_type(e);
        eo["message"] = e.what();
        report["error"] = std::move(eo);
        code = exit_code_for(e);
        err << "error: " << e.what() << "\n";
    }

    if (timing) {
        auto elapsed = std::chrono::steady_clock::now() - t0;
        report["timing_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    }
    if (pretty)
        render_pretty(report, out);
    else
        out << report.dump(2) << "\n";
    return code;
}

}  // namespace chowdiag

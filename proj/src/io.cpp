// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#include "blockopt/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "blockopt/errors.hpp"
#include "blockopt/kernels.hpp"
#include "blockopt/problems.hpp"

namespace blockopt::io {

using nlohmann::json;

namespace {

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json vec_to_json(const Vec& v) {
    json arr = json::array();
    for (std::size_t i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

Vec vec_from_json(const json& j, const std::string& field) {
    if (!j.is_array()) throw InputError(field + ": must be an array of numbers");
    std::vector<double> data;
    data.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_number()) throw InputError(field + ": must contain numbers only");
        data.push_back(e.get<double>());
    }
    try {
        return Vec(std::move(data));
    } catch (const InputError& e) {
        throw InputError(field + ": " + e.what());
    }
}

json linop_to_json(const LinOp& a) {
    json j;
    j["rows"] = a.rows();
    j["cols"] = a.cols();
    j["data"] = a.coefficients();
    return j;
}

LinOp linop_from_json(const json& j, const std::string& field) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
        throw InputError(field + ": must be {rows, cols, data}");
    }
    std::size_t rows = j["rows"].get<std::size_t>();
    std::size_t cols = j["cols"].get<std::size_t>();
    std::vector<double> data = j["data"].get<std::vector<double>>();
    try {
        return LinOp(rows, cols, std::move(data));
    } catch (const InputError& e) {
        throw InputError(field + ": " + e.what());
    }
}

json atom_to_json(const Atom& a) {
    json j;
    switch (a.tag()) {
        case AtomTag::zero: j["atom"] = "zero"; break;
        case AtomTag::l1:
            j["atom"] = "l1";
            j["lambda"] = a.lambda();
            break;
        case AtomTag::sq_l2:
            j["atom"] = "sq_l2";
            j["lambda"] = a.lambda();
            break;
        case AtomTag::ind_nonneg: j["atom"] = "ind_nonneg"; break;
        case AtomTag::ind_box:
            j["atom"] = "ind_box";
            j["lo"] = vec_to_json(a.box_lo());
            j["hi"] = vec_to_json(a.box_hi());
            break;
    }
    return j;
}

Atom atom_from_json(const json& j, const std::string& field) {
    if (!j.is_object() || !j.contains("atom")) {
        throw InputError(field + ": must be an object with an \"atom\" tag");
    }
    std::string tag = j["atom"].get<std::string>();
    try {
        if (tag == "zero") return Atom::zero();
        if (tag == "l1") return Atom::l1(j.at("lambda").get<double>());
        if (tag == "sq_l2") return Atom::sq_l2(j.at("lambda").get<double>());
        if (tag == "ind_nonneg") return Atom::ind_nonneg();
        if (tag == "ind_box") {
            return Atom::ind_box(vec_from_json(j.at("lo"), field + ".lo"),
                                 vec_from_json(j.at("hi"), field + ".hi"));
        }
    } catch (const json::exception& e) {
        throw InputError(field + ": " + e.what());
    } catch (const InputError& e) {
        throw InputError(field + ": " + e.what());
    }
    throw InputError(field + ".atom: unknown tag '" + tag +
                     "' (supported: zero, l1, sq_l2, ind_nonneg, ind_box)");
}

json problem_to_json(const LoadedProblem& p) {
    json j;
    j["schema_version"] = 1;
    j["algorithm"] = p.algorithm;
    j["name"] = p.name;
    if (p.algorithm == "bcd") {
        const BcdProblem& b = *p.bcd;
        const BcdConfig& cfg = *p.bcd_cfg;
        j["f"] = atom_to_json(b.f);
        j["g"] = atom_to_json(b.g);
        if (!b.h.desc) {
            throw InputError("problem_to_json: coupling has no structural description; only "
                             "quadratic couplings serialize");
        }
        json h;
        h["A"] = linop_to_json(b.h.desc->a);
        h["B"] = linop_to_json(b.h.desc->b);
        h["c"] = vec_to_json(b.h.desc->c);
        if (b.h.desc->exact_l) h["exact_l"] = *b.h.desc->exact_l;
        j["H"] = h;
        json c;
        c["gamma"] = cfg.gamma;
        c["max_iters"] = cfg.max_iters;
        c["stop_tol"] = cfg.stop_tol;
        c["seed"] = cfg.seed;
        if (cfg.z0) {
            c["x0"] = vec_to_json(cfg.z0->x);
            c["y0"] = vec_to_json(cfg.z0->y);
        }
        j["config"] = c;
    } else {
        const AdmmProblem& a = *p.admm;
        const AdmmConfig& cfg = *p.admm_cfg;
        j["f1"] = atom_to_json(a.f1);
        j["f2"] = atom_to_json(a.f2);
        if (a.smooth1) {
            j["smooth1"] = {{"G", linop_to_json(a.smooth1->g)}, {"h", vec_to_json(a.smooth1->h)}};
        }
        if (a.smooth2) {
            j["smooth2"] = {{"G", linop_to_json(a.smooth2->g)}, {"h", vec_to_json(a.smooth2->h)}};
        }
        j["A1"] = linop_to_json(a.a1);
        j["A2"] = linop_to_json(a.a2);
        j["b"] = vec_to_json(a.b);
        if (a.feasible_point) {
            j["feasible_point"] = {{"x1", vec_to_json(a.feasible_point->first)},
                                   {"x2", vec_to_json(a.feasible_point->second)}};
        }
        if (a.kkt_reference) {
            j["kkt_reference"] = {{"x1", vec_to_json(a.kkt_reference->x1)},
                                  {"x2", vec_to_json(a.kkt_reference->x2)},
                                  {"y", vec_to_json(a.kkt_reference->y)}};
        }
        json c;
        c["rho"] = cfg.rho;
        c["tau"] = cfg.tau;
        c["max_iters"] = cfg.max_iters;
        c["primal_tol"] = cfg.primal_tol;
        c["dual_tol"] = cfg.dual_tol;
        c["inner_tol"] = cfg.inner_tol;
        c["max_inner"] = cfg.max_inner;
        c["seed"] = cfg.seed;
        if (cfg.x1_0) c["x1_0"] = vec_to_json(*cfg.x1_0);
        if (cfg.x2_0) c["x2_0"] = vec_to_json(*cfg.x2_0);
        if (cfg.y0) c["y0"] = vec_to_json(*cfg.y0);
        j["config"] = c;
    }
    return j;
}

LoadedProblem problem_from_json(const json& j) {
    if (!j.is_object()) throw InputError("problem: top level must be a JSON object");
    if (!j.contains("algorithm")) throw InputError("algorithm: missing (\"bcd\" or \"admm\")");
    LoadedProblem p;
    p.algorithm = j["algorithm"].get<std::string>();
    p.name = j.value("name", std::string("unnamed"));

    if (p.algorithm == "bcd") {
        BcdProblem b;
        b.name = p.name;
        b.f = atom_from_json(j.at("f"), "f");
        b.g = atom_from_json(j.at("g"), "g");
        if (!j.contains("H")) throw InputError("H: missing coupling description");
        const json& h = j["H"];
        LinOp a = linop_from_json(h.at("A"), "H.A");
        LinOp bb = linop_from_json(h.at("B"), "H.B");
        Vec c = vec_from_json(h.at("c"), "H.c");
        std::optional<double> exact_l;
        if (h.contains("exact_l") && !h["exact_l"].is_null()) {
            exact_l = h["exact_l"].get<double>();
        }
        b.n = a.cols();
        b.m = bb.cols();
        b.h = quadratic_coupling(std::move(a), std::move(bb), std::move(c), exact_l);

        BcdConfig cfg;
        if (j.contains("config")) {
            const json& c2 = j["config"];
            cfg.gamma = c2.value("gamma", cfg.gamma);
            cfg.max_iters = c2.value("max_iters", cfg.max_iters);
            cfg.stop_tol = c2.value("stop_tol", cfg.stop_tol);
            cfg.seed = c2.value("seed", cfg.seed);
            if (c2.contains("x0") != c2.contains("y0")) {
                throw InputError("config.x0/config.y0: both blocks of the initial point "
                                 "must be given together");
            }
            if (c2.contains("x0")) {
                cfg.z0 = BlockPair(vec_from_json(c2["x0"], "config.x0"),
                                   vec_from_json(c2["y0"], "config.y0"));
            }
        }
        try {
            cfg.validate();
        } catch (const InputError& e) {
            throw InputError(std::string("config.") + e.what());
        }
        p.bcd = std::move(b);
        p.bcd_cfg = std::move(cfg);
    } else if (p.algorithm == "admm") {
        AdmmProblem a;
        a.name = p.name;
        a.f1 = atom_from_json(j.at("f1"), "f1");
        a.f2 = atom_from_json(j.at("f2"), "f2");
        a.a1 = linop_from_json(j.at("A1"), "A1");
        a.a2 = linop_from_json(j.at("A2"), "A2");
        a.b = vec_from_json(j.at("b"), "b");
        if (j.contains("smooth1")) {
            a.smooth1 = QuadForm{linop_from_json(j["smooth1"].at("G"), "smooth1.G"),
                                 vec_from_json(j["smooth1"].at("h"), "smooth1.h")};
        }
        if (j.contains("smooth2")) {
            a.smooth2 = QuadForm{linop_from_json(j["smooth2"].at("G"), "smooth2.G"),
                                 vec_from_json(j["smooth2"].at("h"), "smooth2.h")};
        }
        if (j.contains("feasible_point")) {
            a.feasible_point = {vec_from_json(j["feasible_point"].at("x1"), "feasible_point.x1"),
                                vec_from_json(j["feasible_point"].at("x2"), "feasible_point.x2")};
        }
        if (j.contains("kkt_reference")) {
            a.kkt_reference =
                AdmmKktRef{vec_from_json(j["kkt_reference"].at("x1"), "kkt_reference.x1"),
                           vec_from_json(j["kkt_reference"].at("x2"), "kkt_reference.x2"),
                           vec_from_json(j["kkt_reference"].at("y"), "kkt_reference.y")};
        }
        a.validate();

        AdmmConfig cfg;
        if (j.contains("config")) {
            const json& c2 = j["config"];
            cfg.rho = c2.value("rho", cfg.rho);
            cfg.tau = c2.value("tau", cfg.tau);
            cfg.max_iters = c2.value("max_iters", cfg.max_iters);
            cfg.primal_tol = c2.value("primal_tol", cfg.primal_tol);
            cfg.dual_tol = c2.value("dual_tol", cfg.dual_tol);
            cfg.inner_tol = c2.value("inner_tol", cfg.inner_tol);
            cfg.max_inner = c2.value("max_inner", cfg.max_inner);
            cfg.seed = c2.value("seed", cfg.seed);
            if (c2.contains("x1_0")) cfg.x1_0 = vec_from_json(c2["x1_0"], "config.x1_0");
            if (c2.contains("x2_0")) cfg.x2_0 = vec_from_json(c2["x2_0"], "config.x2_0");
            if (c2.contains("y0")) cfg.y0 = vec_from_json(c2["y0"], "config.y0");
        }
        try {
            cfg.validate();
        } catch (const InputError& e) {
            throw InputError(std::string("config.") + e.what());
        }
        p.admm = std::move(a);
        p.admm_cfg = std::move(cfg);
    } else {
        throw InputError("algorithm: must be \"bcd\" or \"admm\", got '" + p.algorithm + "'");
    }
    return p;
}

}  // namespace

LoadedProblem load_builtin(const std::string& name, std::uint64_t seed) {
    LoadedProblem p;
    p.name = name;
    if (name == "quadratic") {
        auto [prob, cfg] = make_quadratic(seed);
        p.algorithm = "bcd";
        p.bcd = std::move(prob);
        p.bcd_cfg = cfg;
    } else if (name == "lasso-bcd") {
        auto [prob, cfg] = make_lasso_bcd(seed);
        p.algorithm = "bcd";
        p.bcd = std::move(prob);
        p.bcd_cfg = cfg;
    } else if (name == "consensus-lasso") {
        auto [prob, cfg] = make_consensus_lasso(seed);
        p.algorithm = "admm";
        p.admm = std::move(prob);
        p.admm_cfg = cfg;
    } else if (name == "basis-pursuit") {
        auto [prob, cfg] = make_basis_pursuit(seed);
        p.algorithm = "admm";
        p.admm = std::move(prob);
        p.admm_cfg = cfg;
    } else if (name == "rank-deficient") {
        auto [prob, cfg] = make_rank_deficient(seed);
        p.algorithm = "admm";
        p.admm = std::move(prob);
        p.admm_cfg = cfg;
    } else {
        throw InputError("unknown built-in problem '" + name + "'");
    }
    return p;
}

LoadedProblem load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open problem file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return problem_from_json_text(ss.str());
}

LoadedProblem load_problem(const std::string& path_or_builtin, std::uint64_t seed) {
    std::ifstream probe(path_or_builtin);
    if (probe.good()) return load_problem_file(path_or_builtin);
    if (is_builtin(path_or_builtin)) return load_builtin(path_or_builtin, seed);
    throw InputError("problem: '" + path_or_builtin +
                     "' is neither a readable file nor a built-in name");
}

std::string problem_to_json_text(const LoadedProblem& p) { return problem_to_json(p).dump(2); }

LoadedProblem problem_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("problem file: invalid JSON: ") + e.what());
    }
    try {
        return problem_from_json(j);
    } catch (const json::exception& e) {
        // missing/ill-typed fields surface here with the key name attached
        throw InputError(std::string("problem file: ") + e.what());
    }
}

void save_problem_file(const std::string& path, const LoadedProblem& p) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write problem file '" + path + "'");
    out << problem_to_json_text(p) << "\n";
}

namespace {

void write_vec_cells(std::ostream& os, const Vec& v) {
    for (std::size_t i = 0; i < v.size(); ++i) os << "," << g17(v[i]);
}

}  // namespace

void write_bcd_trace_csv(std::ostream& os, const BcdTrace& trace, bool full) {
    const std::size_t n = trace.xs.empty() ? 0 : trace.xs[0].size();
    const std::size_t m = trace.ys.empty() ? 0 : trace.ys[0].size();
    bool vectors = full || n + m <= 64;

    os << "# blockopt-trace v1\n";
    os << "# algorithm=bcd\n";
    os << "# problem=" << trace.problem_name << "\n";
    os << "# n=" << n << "\n# m=" << m << "\n";
    os << "# gamma=" << g17(trace.gamma) << "\n";
    os << "# l=" << g17(trace.l) << "\n";
    os << "# seed=" << trace.seed << "\n";
    os << "# stopped_early=" << (trace.stopped_early ? 1 : 0) << "\n";
    os << "# vectors=" << (vectors ? 1 : 0) << "\n";

    os << "k,psi,step_norm,step_x,step_y,subdiff_dist";
    if (vectors) {
        for (std::size_t i = 0; i < n; ++i) os << ",x_" << i;
        for (std::size_t i = 0; i < m; ++i) os << ",y_" << i;
    }
    os << "\n";
    for (std::size_t k = 0; k < trace.psi.size(); ++k) {
        os << k << "," << g17(trace.psi[k]) << "," << g17(trace.step_norm[k]) << ","
           << g17(trace.step_x[k]) << "," << g17(trace.step_y[k]) << ","
           << g17(trace.subdiff_dist[k]);
        if (vectors) {
            write_vec_cells(os, trace.xs[k]);
            write_vec_cells(os, trace.ys[k]);
        }
        os << "\n";
    }
}

void write_admm_trace_csv(std::ostream& os, const AdmmTrace& trace, bool full) {
    const std::size_t n = trace.x1.empty() ? 0 : trace.x1[0].size();
    const std::size_t m = trace.x2.empty() ? 0 : trace.x2[0].size();
    const std::size_t p = trace.y.empty() ? 0 : trace.y[0].size();
    bool vectors = full || n + m <= 64;

    os << "# blockopt-trace v1\n";
    os << "# algorithm=admm\n";
    os << "# problem=" << trace.problem_name << "\n";
    os << "# n=" << n << "\n# m=" << m << "\n# p=" << p << "\n";
    os << "# rho=" << g17(trace.rho) << "\n";
    os << "# tau=" << g17(trace.tau) << "\n";
    os << "# inner_tol=" << g17(trace.inner_tol) << "\n";
    os << "# route1=" << to_string(trace.route1) << "\n";
    os << "# route2=" << to_string(trace.route2) << "\n";
    os << "# converged=" << (trace.converged ? 1 : 0) << "\n";
    os << "# full_rank=" << (trace.full_rank ? 1 : 0) << "\n";
    os << "# seed=" << trace.seed << "\n";
    os << "# vectors=" << (vectors ? 1 : 0) << "\n";

    os << "k,lagrangian,primal_norm,dual_norm,inner1,inner2";
    if (vectors) {
        for (std::size_t i = 0; i < n; ++i) os << ",x1_" << i;
        for (std::size_t i = 0; i < m; ++i) os << ",x2_" << i;
        for (std::size_t i = 0; i < p; ++i) os << ",y_" << i;
    }
    os << "\n";
    for (std::size_t k = 0; k < trace.x1.size(); ++k) {
        os << k << "," << g17(trace.lagrangian[k]) << "," << g17(trace.primal_norm[k]) << ","
           << g17(trace.dual_norm[k]) << "," << trace.inner1[k] << "," << trace.inner2[k];
        if (vectors) {
            write_vec_cells(os, trace.x1[k]);
            write_vec_cells(os, trace.x2[k]);
            write_vec_cells(os, trace.y[k]);
        }
        os << "\n";
    }
}

void save_trace_csv(const std::string& path, const BcdTrace& trace, bool full) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write trace file '" + path + "'");
    write_bcd_trace_csv(out, trace, full);
}

void save_trace_csv(const std::string& path, const AdmmTrace& trace, bool full) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write trace file '" + path + "'");
    write_admm_trace_csv(out, trace, full);
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return cells;
}

double parse_double(const std::string& s, const std::string& what) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str()) throw InputError("trace: bad number in " + what + ": '" + s + "'");
    return v;
}

}  // namespace

LoadedTrace load_trace_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open trace file '" + path + "'");

    std::map<std::string, std::string> meta;
    std::string line;
    std::string header;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.rfind("# ", 0) == 0) {
            std::size_t eq = line.find('=');
            if (eq != std::string::npos) {
                meta[line.substr(2, eq - 2)] = line.substr(eq + 1);
            }
            continue;
        }
        header = line;
        break;
    }
    if (header.empty()) throw InputError("trace: missing header row");

    LoadedTrace out;
    out.algorithm = meta.count("algorithm") ? meta["algorithm"] : "";
    out.has_vectors = meta.count("vectors") && meta["vectors"] == "1";
    auto meta_size = [&](const char* key) -> std::size_t {
        if (!meta.count(key)) return 0;
        try {
            return std::stoul(meta[key]);
        } catch (const std::exception&) {
            throw InputError(std::string("trace: bad metadata value for ") + key);
        }
    };
    std::size_t n = meta_size("n");
    std::size_t m = meta_size("m");

    if (out.algorithm == "bcd") {
        BcdTrace t;
        t.problem_name = meta.count("problem") ? meta["problem"] : "";
        t.gamma = meta.count("gamma") ? parse_double(meta["gamma"], "gamma") : 0.0;
        t.l = meta.count("l") ? parse_double(meta["l"], "l") : 0.0;
        t.seed = meta.count("seed") ? meta_size("seed") : 0;
        t.stopped_early = meta.count("stopped_early") && meta["stopped_early"] == "1";
        const std::size_t scalar_cols = 6;
        const std::size_t expected = scalar_cols + (out.has_vectors ? n + m : 0);
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            auto cells = split_csv(line);
            if (cells.size() != expected) {
                throw InputError("trace: row has " + std::to_string(cells.size()) +
                                 " cells, expected " + std::to_string(expected));
            }
            t.psi.push_back(parse_double(cells[1], "psi"));
            t.step_norm.push_back(parse_double(cells[2], "step_norm"));
            t.step_x.push_back(parse_double(cells[3], "step_x"));
            t.step_y.push_back(parse_double(cells[4], "step_y"));
            t.subdiff_dist.push_back(parse_double(cells[5], "subdiff_dist"));
            if (out.has_vectors) {
                std::vector<double> x(n), y(m);
                for (std::size_t i = 0; i < n; ++i) {
                    x[i] = parse_double(cells[scalar_cols + i], "x");
                }
                for (std::size_t i = 0; i < m; ++i) {
                    y[i] = parse_double(cells[scalar_cols + n + i], "y");
                }
                t.xs.emplace_back(std::move(x));
                t.ys.emplace_back(std::move(y));
            }
        }
        out.bcd = std::move(t);
    } else if (out.algorithm == "admm") {
        AdmmTrace t;
        std::size_t p = meta_size("p");
        t.problem_name = meta.count("problem") ? meta["problem"] : "";
        t.rho = meta.count("rho") ? parse_double(meta["rho"], "rho") : 0.0;
        t.tau = meta.count("tau") ? parse_double(meta["tau"], "tau") : 0.0;
        t.inner_tol = meta.count("inner_tol") ? parse_double(meta["inner_tol"], "inner_tol") : 0.0;
        t.converged = meta.count("converged") && meta["converged"] == "1";
        t.full_rank = !meta.count("full_rank") || meta["full_rank"] == "1";
        t.seed = meta.count("seed") ? meta_size("seed") : 0;
        auto parse_route = [](const std::string& s) {
            if (s == "prox") return SubproblemRoute::prox_closed_form;
            if (s == "inner") return SubproblemRoute::inner;
            return SubproblemRoute::linear;
        };
        if (meta.count("route1")) t.route1 = parse_route(meta["route1"]);
        if (meta.count("route2")) t.route2 = parse_route(meta["route2"]);

        const std::size_t scalar_cols = 6;
        const std::size_t expected = scalar_cols + (out.has_vectors ? n + m + p : 0);
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            auto cells = split_csv(line);
            if (cells.size() != expected) {
                throw InputError("trace: row has " + std::to_string(cells.size()) +
                                 " cells, expected " + std::to_string(expected));
            }
            t.lagrangian.push_back(parse_double(cells[1], "lagrangian"));
            t.primal_norm.push_back(parse_double(cells[2], "primal_norm"));
            t.dual_norm.push_back(parse_double(cells[3], "dual_norm"));
            t.inner1.push_back(static_cast<std::size_t>(parse_double(cells[4], "inner1")));
            t.inner2.push_back(static_cast<std::size_t>(parse_double(cells[5], "inner2")));
            if (out.has_vectors) {
                std::vector<double> x1(n), x2(m), y(p);
                for (std::size_t i = 0; i < n; ++i) {
                    x1[i] = parse_double(cells[scalar_cols + i], "x1");
                }
                for (std::size_t i = 0; i < m; ++i) {
                    x2[i] = parse_double(cells[scalar_cols + n + i], "x2");
                }
                for (std::size_t i = 0; i < p; ++i) {
                    y[i] = parse_double(cells[scalar_cols + n + m + i], "y");
                }
                t.x1.emplace_back(std::move(x1));
                t.x2.emplace_back(std::move(x2));
                t.y.emplace_back(std::move(y));
            }
        }
        out.admm = std::move(t);
    } else {
        throw InputError("trace: unknown or missing algorithm metadata");
    }
    return out;
}

void rebuild_residuals(AdmmTrace& trace, const AdmmProblem& p) {
    trace.r.clear();
    for (std::size_t k = 0; k < trace.x1.size(); ++k) {
        trace.r.push_back(p.a1.apply(trace.x1[k]) + p.a2.apply(trace.x2[k]) - p.b);
    }
}

namespace {

json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

}  // namespace

std::string report_to_json_text(const std::vector<CheckReport>& reports,
                                const std::string& algorithm, const std::string& problem) {
    json j;
    j["schema_version"] = 1;
    j["algorithm"] = algorithm;
    j["problem"] = problem;
    j["kernel_lane"] = kernels::isa_name();
    json checks = json::array();
    bool ok = true;
    for (const auto& r : reports) {
        json c;
        c["name"] = r.name;
        c["certifies"] = r.certifies;
        c["status"] = to_string(r.status);
        c["min_margin"] = r.min_margin ? finite_or_null(*r.min_margin) : json(nullptr);
        c["violations"] = r.violations;
        c["tolerance"] = finite_or_null(r.tolerance);
        json metrics;
        for (const auto& [k, v] : r.metrics) metrics[k] = finite_or_null(v);
        c["metrics"] = metrics;
        c["details"] = r.details;
        checks.push_back(std::move(c));
        ok = ok && r.ok();
    }
    j["checks"] = std::move(checks);
    j["overall"] = ok ? "pass" : "fail";
    return j.dump(2);
}

void save_report_json(const std::string& path, const std::vector<CheckReport>& reports,
                      const std::string& algorithm, const std::string& problem) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write report file '" + path + "'");
    out << report_to_json_text(reports, algorithm, problem) << "\n";
}

}  // namespace blockopt::io

#pragma once

// Color-graph text format, JSON reports, and the command surface shared by
// the CLI binary and the test suite.

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "autgrp.hpp"
#include "colorgraph.hpp"
#include "constructions.hpp"
#include "enumerate.hpp"
#include "field.hpp"
#include "perm.hpp"
#include "stabilize.hpp"

namespace jlab {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------- format

struct ParseError : std::runtime_error {
    int line, column;
    ParseError(int line_, int column_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ", column " +
                             std::to_string(column_) + ": " + what_),
          line(line_),
          column(column_) {}
};

// "n r" header, n rows of n color indices, '#' comments anywhere.
inline std::string write_colorgraph(const ColorGraph& cg) {
    std::string out = std::to_string(cg.n) + " " + std::to_string(cg.r) + "\n";
    for (int x = 0; x < cg.n; ++x) {
        for (int y = 0; y < cg.n; ++y) {
            if (y) out += ' ';
            out += std::to_string(cg.at(x, y));
        }
        out += '\n';
    }
    return out;
}

inline ColorGraph parse_colorgraph(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    auto next_line = [&](std::vector<long long>& vals, std::vector<int>& cols) -> bool {
        while (std::getline(in, raw)) {
            ++lineno;
            vals.clear();
            cols.clear();
            size_t i = 0;
            while (i < raw.size()) {
                if (std::isspace((unsigned char)raw[i])) {
                    ++i;
                    continue;
                }
                if (raw[i] == '#') break;
                size_t start = i;
                bool neg = raw[i] == '-';
                if (neg) ++i;
                size_t digits = 0;
                long long v = 0;
                while (i < raw.size() && std::isdigit((unsigned char)raw[i])) {
                    v = v * 10 + (raw[i] - '0');
                    if (v > 1000000000) throw ParseError(lineno, (int)start + 1, "number too large");
                    ++i;
                    ++digits;
                }
                if (digits == 0 || (i < raw.size() && !std::isspace((unsigned char)raw[i]) && raw[i] != '#'))
                    throw ParseError(lineno, (int)start + 1, "expected an integer");
                vals.push_back(neg ? -v : v);
                cols.push_back((int)start + 1);
            }
            if (!vals.empty()) return true;
        }
        return false;
    };
    std::vector<long long> vals;
    std::vector<int> cols;
    if (!next_line(vals, cols)) throw ParseError(lineno + 1, 1, "missing header line");
    if (vals.size() != 2 || vals[0] < 1 || vals[1] < 1)
        throw ParseError(lineno, cols.empty() ? 1 : cols[0], "malformed header, expected \"n r\"");
    int n = (int)vals[0], r = (int)vals[1];
    ColorGraph cg(n, r);
    for (int x = 0; x < n; ++x) {
        if (!next_line(vals, cols)) throw ParseError(lineno, 1, "missing matrix row");
        if ((int)vals.size() != n)
            throw ParseError(lineno, cols.empty() ? 1 : cols.back(), "wrong row length");
        for (int y = 0; y < n; ++y) {
            if (vals[y] < 0 || vals[y] >= r)
                throw ParseError(lineno, cols[y], "color index out of range");
            cg.at(x, y) = (int)vals[y];
        }
    }
    if (next_line(vals, cols)) throw ParseError(lineno, cols.empty() ? 1 : cols[0], "trailing data");
    std::vector<char> used(r, 0);
    for (int v : cg.cells) used[v] = 1;
    for (int c = 0; c < r; ++c)
        if (!used[c]) throw ParseError(lineno, 1, "unused color index " + std::to_string(c));
    return cg;
}

// ---------------------------------------------------------------- reports

inline json group_order_json(const PermGroup& g) {
    unsigned __int128 o = g.order();
    if (o <= (unsigned __int128)9007199254740992ull) return (uint64_t)o;
    return g.order_str();
}

inline json scheme_report_json(const ColorGraph& cg, const SchemeReport& rep) {
    json j;
    j["n"] = cg.n;
    j["rank"] = cg.r;
    j["valid_partition"] = rep.valid_partition;
    j["reflexive_split"] = rep.reflexive_split_ok;
    j["transpose_closed"] = rep.transpose_closed;
    j["is_cc"] = rep.is_cc;
    j["is_homogeneous"] = rep.is_homogeneous;
    j["is_symmetric"] = rep.is_symmetric;
    j["is_commutative"] = rep.is_commutative;
    j["is_jordan_scheme"] = rep.is_jordan_scheme;
    j["valencies"] = rep.valencies;
    std::vector<int> fibers;
    for (auto& f : rep.fibers) fibers.push_back((int)f.size());
    j["fibers"] = fibers;
    return j;
}

// ---------------------------------------------------------------- commands

struct CommandResult {
    int status = 0;
    std::string output;  // stdout payload
    std::string error;   // stderr payload
};

namespace detail {

inline ColorGraph load_graph(const std::string& file, const std::string& stdin_text) {
    if (file.empty() || file == "-") {
        try {
            return parse_colorgraph(stdin_text);
        } catch (const ParseError& e) {
            throw std::runtime_error(std::string("stdin: ") + e.what());
        }
    }
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open file: " + file);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_colorgraph(ss.str());
    } catch (const ParseError& e) {
        throw std::runtime_error(file + ": " + e.what());
    }
}

inline std::vector<Perm> parse_generators(const std::string& text, int n) {
    std::vector<Perm> gens;
    std::string cur;
    std::stringstream ss(text);
    while (std::getline(ss, cur, ';')) {
        bool blank = true;
        for (char ch : cur)
            if (!std::isspace((unsigned char)ch)) blank = false;
        if (!blank) gens.push_back(perm_parse(cur, n));
    }
    return gens;
}

inline int parse_threads(int requested) {
    int t = requested;
    if (t <= 0) {
        if (const char* env = std::getenv("JORDANLAB_THREADS")) t = std::atoi(env);
    }
    if (t <= 0) t = 1;
    if (t > 256) t = 256;
    return t;
}

}  // namespace detail

// The whole CLI as a pure function: args (without argv[0]) plus stdin text
// in, exit status plus stdout/stderr payloads out.
inline CommandResult run_command(const std::vector<std::string>& args,
                                 const std::string& stdin_text = "") {
    CommandResult res;
    CLI::App app{"coherent configuration and Jordan scheme toolkit"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (results are identical for any value)");

    std::string out_file;
    auto emit_data = [&](const ColorGraph& cg) {
        std::string text = write_colorgraph(cg);
        if (!out_file.empty()) {
            std::ofstream f(out_file);
            if (!f) throw std::runtime_error("cannot write file: " + out_file);
            f << text;
        }
        res.output = text;
    };
    auto emit_json = [&](const json& j) { res.output = j.dump(2) + "\n"; };

    // construct
    auto* c_construct = app.add_subcommand("construct", "build a scheme");
    std::string kind;
    int q = 0, d = 2, alpha = 1;
    c_construct->add_option("kind", kind, "j15|s12|shah6|petersen|heawood|psl2|gunnells|wfdf")
        ->required();
    c_construct->add_option("--q", q, "field order");
    c_construct->add_option("--alpha", alpha, "determinant class (gunnells)");
    c_construct->add_option("--d", d, "dimension (wfdf)");
    c_construct->add_option("-o", out_file, "also write the result to a file");

    auto add_file_cmd = [&](const char* name, const char* desc, std::string& file) {
        auto* c = app.add_subcommand(name, desc);
        c->add_option("file", file, "input color graph (defaults to stdin)");
        return c;
    };

    std::string f_stab, f_check, f_aut, f_caut, f_pre, f_switch, f_merge, f_ia;
    std::string mode = "wl";
    auto* c_stab = add_file_cmd("stabilize", "WL or Jordan closure", f_stab);
    c_stab->add_option("--mode", mode, "wl|jordan");
    c_stab->add_option("-o", out_file, "also write the result to a file");

    auto* c_check = add_file_cmd("check", "classification and properness report", f_check);

    auto* c_aut = add_file_cmd("aut", "color-preserving automorphism group", f_aut);
    auto* c_caut = add_file_cmd("caut", "color automorphism group", f_caut);

    auto* c_iso = app.add_subcommand("iso", "isomorphism test");
    std::string iso_a, iso_b;
    bool color_permuting = false;
    c_iso->add_option("a", iso_a, "first color graph")->required();
    c_iso->add_option("b", iso_b, "second color graph")->required();
    c_iso->add_flag("--color-permuting", color_permuting, "allow color permutations");

    auto* c_two = app.add_subcommand("two-orbits", "2-orbit color graph of a permutation group");
    std::string gens_text;
    int degree = 0;
    c_two->add_option("--gens", gens_text, "generators in cycle notation, ';'-separated")->required();
    c_two->add_option("--n", degree, "degree")->required();
    c_two->add_option("-o", out_file, "also write the result to a file");

    int fiber = 0, keep = 0;
    auto* c_pre = add_file_cmd("pregraph", "rank-10 island/continent split", f_pre);
    c_pre->add_option("--fiber", fiber, "island fiber index");
    c_pre->add_option("-o", out_file, "also write the result to a file");

    auto* c_switch = add_file_cmd("switch", "bridge switching of a rank-6 scheme", f_switch);
    c_switch->add_option("--fiber", fiber, "island fiber index");
    c_switch->add_option("--keep", keep, "thick color kept intact");
    c_switch->add_option("-o", out_file, "also write the result to a file");

    auto* c_merge = add_file_cmd("mergings", "merging (fusion) search", f_merge);
    std::string target = "as";
    int merge_rank = -1;
    c_merge->add_option("--target", target, "as|js");
    c_merge->add_option("--rank", merge_rank, "exact rank of the merging");

    auto* c_enum = app.add_subcommand("enumerate", "enumerate Jordan schemes of order n");
    int enum_n = 0, enum_min_rank = 3, enum_max_rank = -1;
    bool proper_only = false;
    std::vector<long long> enum_valencies;
    c_enum->add_option("--n", enum_n, "order")->required();
    c_enum->add_option("--min-rank", enum_min_rank, "minimum rank");
    c_enum->add_option("--max-rank", enum_max_rank, "maximum rank");
    c_enum->add_option("--valencies", enum_valencies, "required valency multiset");
    c_enum->add_flag("--proper-only", proper_only, "keep only proper schemes");

    auto* c_ia = add_file_cmd("intersection-array", "distance-regularity parameters", f_ia);
    int ia_color = -1;
    c_ia->add_option("--color", ia_color, "color index")->required();

    std::vector<const char*> argv;
    argv.push_back("jlab");
    for (auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse((int)argv.size(), argv.data());
    } catch (const CLI::CallForHelp& e) {
        std::stringstream out;
        out << app.help();
        res.output = out.str();
        return res;
    } catch (const CLI::ParseError& e) {
        res.status = 2;
        res.error = std::string(e.what()) + "\n";
        return res;
    }
    detail::parse_threads(threads);

    try {
        if (*c_construct) {
            if (kind == "psl2")
                emit_data(psl2_ot_scheme(q).graph);
            else if (kind == "gunnells")
                emit_data(gunnells_scheme(q));
            else if (kind == "wfdf")
                emit_data(wfdf_scheme({.d = d}));
            else
                emit_data(builtin(kind));
        } else if (*c_stab) {
            ColorGraph cg = detail::load_graph(f_stab, stdin_text);
            if (mode == "wl")
                emit_data(wl_closure(cg).closure);
            else if (mode == "jordan")
                emit_data(jordan_closure(cg).closure);
            else
                throw std::runtime_error("unknown mode: " + mode);
        } else if (*c_check) {
            ColorGraph cg = detail::load_graph(f_check, stdin_text);
            SchemeReport rep = classify(cg);
            json j = scheme_report_json(cg, rep);
            j["wl_rank"] = wl_closure(cg).closure.r;
            if (rep.is_jordan_scheme) {
                PropernessReport pr = is_proper(cg);
                j["proper"] = pr.proper;
                j["genuine"] = pr.genuine;
                j["swl_rank"] = pr.swl_rank;
                j["wl_fibers"] = pr.wl_fibers;
            }
            emit_json(j);
        } else if (*c_aut) {
            ColorGraph cg = detail::load_graph(f_aut, stdin_text);
            PermGroup g = automorphism_group(cg);
            json j;
            j["order"] = group_order_json(g);
            std::vector<int> orbit_sizes;
            for (auto& o : g.orbits()) orbit_sizes.push_back((int)o.size());
            j["orbit_sizes"] = orbit_sizes;
            std::vector<std::string> gens;
            for (auto& p : g.gens) gens.push_back(perm_images(p));
            j["generators"] = gens;
            emit_json(j);
        } else if (*c_caut) {
            ColorGraph cg = detail::load_graph(f_caut, stdin_text);
            PermGroup aut = automorphism_group(cg);
            PermGroup caut = color_automorphism_group(cg);
            json j;
            j["order"] = group_order_json(caut);
            j["aut_order"] = group_order_json(aut);
            j["aaut_order"] = (uint64_t)algebraic_automorphisms(cg).size();
            emit_json(j);
        } else if (*c_iso) {
            ColorGraph a = detail::load_graph(iso_a, stdin_text);
            ColorGraph b = detail::load_graph(iso_b, stdin_text);
            auto w = isomorphic(a, b,
                                color_permuting ? IsoMode::ColorPermuting : IsoMode::ColorPreserving);
            json j;
            j["isomorphic"] = (bool)w;
            if (w) {
                j["vertex_map"] = w->vertex_map;
                j["color_map"] = w->color_map;
            }
            emit_json(j);
        } else if (*c_two) {
            if (degree < 1) throw std::runtime_error("degree must be positive");
            PermGroup g(degree, detail::parse_generators(gens_text, degree));
            emit_data(two_orbits(g));
        } else if (*c_pre) {
            ColorGraph cg = detail::load_graph(f_pre, stdin_text);
            Rank6Result v = verify_rank6_table(cg);
            if (!v.ok) throw std::runtime_error("rank-6 table verification failed: " + v.error);
            emit_data(pregraph(cg, v.labeling, fiber).graph);
        } else if (*c_switch) {
            ColorGraph cg = detail::load_graph(f_switch, stdin_text);
            Rank6Result v = verify_rank6_table(cg);
            if (!v.ok) throw std::runtime_error("rank-6 table verification failed: " + v.error);
            emit_data(switch_bridges(pregraph(cg, v.labeling, fiber), keep));
        } else if (*c_merge) {
            ColorGraph cg = detail::load_graph(f_merge, stdin_text);
            MergingConstraints con;
            if (target == "as")
                con.target = MergingConstraints::Target::AS;
            else if (target == "js")
                con.target = MergingConstraints::Target::JordanScheme;
            else
                throw std::runtime_error("unknown target: " + target);
            con.exact_rank = merge_rank;
            auto mergings = find_mergings(cg, con);
            json j;
            j["count"] = (uint64_t)mergings.size();
            json list = json::array();
            for (auto& partition : mergings) {
                ColorGraph merged = merge_colors(cg, partition);
                SchemeReport rep = classify(merged);
                json entry;
                entry["partition"] = partition;
                entry["rank"] = merged.r;
                entry["valencies"] = rep.valencies;
                list.push_back(std::move(entry));
            }
            j["mergings"] = std::move(list);
            emit_json(j);
        } else if (*c_enum) {
            EnumerationTask task;
            task.n = enum_n;
            task.min_rank = enum_min_rank;
            task.max_rank = enum_max_rank;
            task.proper_only = proper_only;
            if (!enum_valencies.empty()) task.valencies = enum_valencies;
            EnumerationResult r = enumerate_jordan_schemes(task);
            json j;
            j["count"] = (uint64_t)r.schemes.size();
            j["complete"] = r.complete;
            j["nodes"] = r.nodes;
            json list = json::array();
            for (auto& s : r.schemes) {
                json entry;
                entry["rank"] = s.graph.r;
                entry["valencies"] = s.report.valencies;
                entry["proper"] = s.properness.proper;
                entry["genuine"] = s.properness.genuine;
                std::vector<std::vector<int>> rows(s.graph.n, std::vector<int>(s.graph.n));
                for (int x = 0; x < s.graph.n; ++x)
                    for (int y = 0; y < s.graph.n; ++y) rows[x][y] = s.graph.at(x, y);
                entry["matrix"] = rows;
                list.push_back(std::move(entry));
            }
            j["schemes"] = std::move(list);
            emit_json(j);
        } else if (*c_ia) {
            ColorGraph cg = detail::load_graph(f_ia, stdin_text);
            auto ia = intersection_array(relation(cg, ia_color));
            json j;
            j["distance_regular"] = (bool)ia;
            if (ia) {
                j["diameter"] = ia->diameter;
                j["b"] = ia->b;
                j["c"] = ia->c;
            }
            emit_json(j);
        }
    } catch (const std::exception& e) {
        res.status = 1;
        res.error = std::string(e.what()) + "\n";
        return res;
    }
    return res;
}

}  // namespace jlab

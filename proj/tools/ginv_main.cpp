#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "ginv/json_io.hpp"

namespace {

using namespace ginv;

std::pair<int, int> parse_range(const std::string& s) {
    const auto parse_int = [&s](const std::string& part) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(part, &used);
        } catch (const std::exception&) {
            throw ParseError("invalid range '" + s + "': expected N or LO..HI");
        }
        if (used != part.size()) {
            throw ParseError("invalid range '" + s + "': expected N or LO..HI");
        }
        return v;
    };
    const auto pos = s.find("..");
    if (pos == std::string::npos) {
        const int v = parse_int(s);
        return {v, v};
    }
    return {parse_int(s.substr(0, pos)), parse_int(s.substr(pos + 2))};
}

InnerInverse wrap_inner(const Matrix& t, const Matrix& x, const ToleranceConfig& cfg) {
    const double res = rel_residual(t * x * t, t);
    if (res > cfg.eq_tol) {
        throw InvalidInnerInverse("supplied matrix is not an inner inverse: relative residual " +
                                  std::to_string(res));
    }
    return InnerInverse{x, FreeParameter{x}, res};
}

InnerInverse resolve_inner(const Matrix& t, const std::string& inner_path, bool has_seed,
                           std::uint64_t seed, const ToleranceConfig& cfg) {
    if (!inner_path.empty()) return wrap_inner(t, read_matrix_file(inner_path), cfg);
    if (has_seed) {
        verify::Rng rng(seed);
        return inner_sample(t, rng.gaussian(t.cols(), t.rows()), cfg);
    }
    return inner_from_pinv(t, cfg);
}

void emit(const Json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << dump_json(j);
    } else {
        write_json_file(out_path, j);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized inverses of complex matrices: Drazin, inner families, "
                 "mixed one-sided inverses, pre-orders, and property checks"};
    app.require_subcommand(1);

    ToleranceConfig cfg;
    app.add_option("--tol", cfg.eq_tol, "relative matrix-equality tolerance");
    app.add_option("--rank-tol", cfg.rank_tol, "relative singular-value cutoff");
    app.add_option("--eig-tol", cfg.eig_tol, "relative eigenvalue-magnitude cutoff");

    auto* dc = app.add_subcommand("decompose", "split a square matrix");
    dc->require_subcommand(1);
    dc->fallthrough();
    std::string dc_in;
    auto* dc_core =
        dc->add_subcommand("core", "similarity split into an invertible and a nilpotent block");
    auto* dc_range = dc->add_subcommand("closed-range", "orthonormal range-coordinate split");
    for (auto* c : {dc_core, dc_range}) {
        c->fallthrough();
        c->add_option("--in", dc_in, "input matrix JSON")->required();
    }

    std::string dz_in;
    std::string dz_out;
    auto* dz = app.add_subcommand("drazin", "Drazin inverse");
    dz->fallthrough();
    dz->add_option("--in", dz_in, "input matrix JSON")->required();
    dz->add_option("--out", dz_out, "output matrix JSON")->required();

    struct MixedArgs {
        std::string in;
        std::string out;
        std::string inner;
        std::uint64_t inner_seed = 0;
        CLI::Option* seed_opt = nullptr;
    };
    MixedArgs g1;
    MixedArgs h1;
    auto* gd = app.add_subcommand("gd1", "mixed inverse T^d T T^-");
    auto* og = app.add_subcommand("onegd", "mixed inverse T^- T T^d");
    for (auto [c, a] : {std::pair{gd, &g1}, std::pair{og, &h1}}) {
        c->fallthrough();
        c->add_option("--in", a->in, "input matrix JSON")->required();
        c->add_option("--out", a->out, "output matrix JSON")->required();
        auto* fi = c->add_option("--inner", a->inner, "inner inverse matrix JSON");
        a->seed_opt = c->add_option("--inner-seed", a->inner_seed,
                                    "sample a random inner inverse from this seed");
        a->seed_opt->excludes(fi);
    }

    std::string in_in;
    std::string in_out;
    std::uint64_t in_seed = 0;
    auto* inn = app.add_subcommand("inner", "an inner inverse of the input");
    inn->fallthrough();
    inn->add_option("--in", in_in, "input matrix JSON")->required();
    auto* inn_seed_opt =
        inn->add_option("--inner-seed", in_seed, "sample from this seed instead of the "
                                                 "pseudoinverse");
    inn->add_option("--out", in_out, "output matrix JSON (stdout when omitted)");

    std::string po_rel;
    std::string po_s;
    std::string po_t;
    std::string po_inner;
    int po_nmax = 64;
    auto* po = app.add_subcommand("preorder", "test S below T");
    po->fallthrough();
    po->add_option("--rel", po_rel, "relation variant")
        ->required()
        ->check(CLI::IsMember({"gd1", "onegd", "drazin"}));
    po->add_option("--s", po_s, "first operand S (matrix JSON)")->required();
    po->add_option("--t", po_t, "second operand T (matrix JSON)")->required();
    po->add_option("--inner", po_inner, "inner inverse of S (default: pseudoinverse)");
    po->add_option("--nmax", po_nmax, "membership sequence length");

    std::string ch_theorem;
    std::string ch_in;
    std::string ch_inner;
    std::string ch_extra;
    auto* ch = app.add_subcommand("check", "verify one registered statement");
    ch->fallthrough();
    ch->add_option("--theorem", ch_theorem, "statement id")->required();
    ch->add_option("--in", ch_in, "operand matrix JSON")->required();
    ch->add_option("--inner", ch_inner, "inner inverse (default: pseudoinverse)");
    ch->add_option("--extra", ch_extra, "second operand for binary statements");

    std::string fz_dims = "2..8";
    std::string fz_indices = "0..3";
    int fz_count = 1000;
    std::uint64_t fz_seed = 42;
    std::string fz_report;
    auto* fz = app.add_subcommand("fuzz", "run every registered statement on random instances");
    fz->fallthrough();
    fz->add_option("--dims", fz_dims, "dimension range, N or LO..HI");
    fz->add_option("--indices", fz_indices, "target index range, N or LO..HI");
    fz->add_option("--count", fz_count, "instances per statement");
    fz->add_option("--seed", fz_seed, "master seed")->envname("GINV_SEED");
    fz->add_option("--report", fz_report, "write the report here (stdout when omitted)");

    int l2_n = 200;
    auto* l2 = app.add_subcommand("l2-example", "finite section of the sequence-space example");
    l2->fallthrough();
    l2->add_option("--truncate", l2_n, "section dimension (>= 4)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    int code = 0;
    try {
        if (*dc_core) {
            emit(to_json(core_nilpotent(read_matrix_file(dc_in), cfg)), "");
        } else if (*dc_range) {
            emit(to_json(closed_range(read_matrix_file(dc_in), cfg)), "");
        } else if (*dz) {
            const Matrix t = read_matrix_file(dz_in);
            emit(matrix_to_json(drazin(t, cfg)), dz_out);
        } else if (*gd || *og) {
            const MixedArgs& a = *gd ? g1 : h1;
            const Matrix t = read_matrix_file(a.in);
            const InnerInverse tm =
                resolve_inner(t, a.inner, a.seed_opt->count() > 0, a.inner_seed, cfg);
            const Matrix result = *gd ? gd1(t, tm, cfg) : onegd(t, tm, cfg);
            emit(matrix_to_json(result), a.out);
        } else if (*inn) {
            const Matrix t = read_matrix_file(in_in);
            const InnerInverse x = resolve_inner(t, "", inn_seed_opt->count() > 0, in_seed, cfg);
            Json j = matrix_to_json(x.value);
            j["provenance"] = provenance_name(x.provenance);
            j["residual"] = x.residual;
            emit(j, in_out);
        } else if (*po) {
            const Matrix s = read_matrix_file(po_s);
            const Matrix t = read_matrix_file(po_t);
            Json out;
            PreorderReport pr;
            if (po_rel == "drazin") {
                pr = below_drazin(s, t, cfg);
                out["preorder"] = to_json(pr);
            } else {
                const Relation rel = po_rel == "gd1" ? Relation::gd1 : Relation::onegd;
                const InnerInverse sm = resolve_inner(s, po_inner, false, 0, cfg);
                pr = rel == Relation::gd1 ? below_gd1(s, t, sm, cfg)
                                          : below_onegd(s, t, sm, cfg);
                out["preorder"] = to_json(pr);
                out["membership"] = to_json(po_membership(s, sm, rel, po_nmax, cfg));
            }
            emit(out, "");
            code = pr.holds ? 0 : 1;
        } else if (*ch) {
            const Matrix t = read_matrix_file(ch_in);
            const InnerInverse tm = resolve_inner(t, ch_inner, false, 0, cfg);
            std::optional<Matrix> extra;
            if (!ch_extra.empty()) extra = read_matrix_file(ch_extra);
            const verify::TheoremCheckReport rep = verify::check(ch_theorem, t, tm, extra, cfg);
            emit(to_json(rep), "");
            code = rep.passed ? 0 : 1;
        } else if (*fz) {
            const auto [dlo, dhi] = parse_range(fz_dims);
            const auto [ilo, ihi] = parse_range(fz_indices);
            const verify::FuzzReport rep =
                verify::fuzz(dlo, dhi, ilo, ihi, fz_count, fz_seed, cfg);
            if (fz_report.empty()) {
                emit(to_json(rep), "");
            } else {
                write_json_file(fz_report, to_json(rep));
                std::cout << (rep.passed ? "fuzz passed\n" : "fuzz failed\n");
            }
            code = rep.passed ? 0 : 1;
        } else if (*l2) {
            const verify::TheoremCheckReport rep = verify::l2_example(l2_n, cfg);
            emit(to_json(rep), "");
            code = rep.passed ? 0 : 1;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return code;
}

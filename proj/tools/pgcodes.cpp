// pgcodes: build projective geometric codes and their duals, construct
// hyperovals / cylinders / KM-arcs, compute exact minimum distances, and
// check the spectrum and bound identities. All machine output is JSON or
// CSV with stable key order.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "pgc/analysis.hpp"
#include "pgc/codes.hpp"
#include "pgc/constructions.hpp"
#include "pgc/json_io.hpp"
#include "pgc/minwt.hpp"
#include "pgc/parallel.hpp"

using namespace pgc;

namespace {

struct CommonArgs {
    std::uint64_t n = 2;
    std::uint64_t q = 2;
    std::uint64_t k = 1;
    std::string format = "json";
    std::string output;
};

GeometryContext open_geometry(std::uint64_t n, std::uint64_t q) {
    std::uint64_t p = 0, e = 0;
    factor_prime_power(q, p, e);
    return GeometryContext(int(n), FieldSpec::make(p, e));
}

void emit(const std::string& text, const std::string& output) {
    if (output.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream out(output);
        if (!out) throw std::invalid_argument("cannot write " + output);
        out << text;
        if (text.empty() || text.back() != '\n') out << "\n";
    }
}

void emit_json(const io::json& j, const std::string& output) { emit(j.dump(2), output); }

D2Table d2_table_from_env() {
    const char* path = std::getenv("PGCODES_DATA");
    if (path != nullptr && *path != '\0') return D2Table::load(path);
    return D2Table::builtin();
}

int run(int argc, char** argv) {
    CLI::App app{"projective geometric dual codes toolkit"};
    app.require_subcommand(1);
    unsigned jobs = default_jobs();
    std::uint64_t enum_cap = kDefaultEnumCap;
    std::uint64_t seed = 0;

    // ---- geometry info ----
    CommonArgs geo;
    CLI::App* geometry = app.add_subcommand("geometry", "geometry facts");
    CLI::App* geo_info = geometry->add_subcommand("info", "theta values and subspace counts");
    geo_info->add_option("-n", geo.n, "projective dimension")->required();
    geo_info->add_option("-q", geo.q, "field order (prime power)")->required();
    geo_info->add_option("--format", geo.format, "json|table");

    // ---- code build ----
    CommonArgs code;
    std::string kernel_out, matrix_out;
    CLI::App* code_cmd = app.add_subcommand("code", "incidence codes");
    CLI::App* code_build = code_cmd->add_subcommand("build", "build M(k-spaces, points) and its kernel");
    code_build->add_option("-n", code.n)->required();
    code_build->add_option("-q", code.q)->required();
    code_build->add_option("-k", code.k)->required();
    code_build->add_option("--kernel", kernel_out, "write the kernel basis JSON here");
    code_build->add_option("--matrix", matrix_out, "write the incidence matrix text here");

    // ---- construct ----
    CLI::App* construct = app.add_subcommand("construct", "build the named objects");
    CommonArgs hyp;
    CLI::App* c_hyper = construct->add_subcommand("hyperoval", "conic plus nucleus, q even");
    c_hyper->add_option("-q", hyp.q)->required();
    c_hyper->add_option("-o,--output", hyp.output);

    CommonArgs ld;
    std::uint64_t h1 = 0, h2 = 1;
    std::uint64_t alpha = 1;
    CLI::App* c_ld = construct->add_subcommand("linediff", "difference of two hyperplanes");
    c_ld->add_option("-n", ld.n)->required();
    c_ld->add_option("-q", ld.q)->required();
    c_ld->add_option("--h1", h1, "first hyperplane id");
    c_ld->add_option("--h2", h2, "second hyperplane id");
    c_ld->add_option("--alpha", alpha, "nonzero prime-field scalar");
    c_ld->add_option("-o,--output", ld.output);

    CommonArgs cyl;
    std::string base_file;
    CLI::App* c_cyl = construct->add_subcommand("cylinder", "cylinder codeword over a planar base");
    c_cyl->add_option("-n", cyl.n)->required();
    c_cyl->add_option("-q", cyl.q)->required();
    c_cyl->add_option("--base", base_file, "base codeword JSON over PG(2,q); default: hyperoval indicator");
    c_cyl->add_option("--seed", seed, "randomize the vertex / base plane choice");
    c_cyl->add_option("-o,--output", cyl.output);

    CommonArgs km;
    std::uint64_t l1 = 0, l2 = 1;
    CLI::App* c_km = construct->add_subcommand("kmarc", "two lines minus their common point");
    c_km->add_option("-q", km.q)->required();
    c_km->add_option("--l1", l1);
    c_km->add_option("--l2", l2);
    c_km->add_option("-o,--output", km.output);

    // ---- verify ----
    CLI::App* verify = app.add_subcommand("verify", "check properties of stored objects");
    std::string v_in;
    std::uint64_t v_k = 1;
    CLI::App* v_even = verify->add_subcommand("evenset", "even intersection with every k-space");
    v_even->add_option("-i,--input", v_in)->required();
    v_even->add_option("-k", v_k);

    std::string vd_in;
    std::uint64_t vd_k = 1;
    CLI::App* v_dual = verify->add_subcommand("dualword", "zero sum over every k-space");
    v_dual->add_option("-i,--input", vd_in)->required();
    v_dual->add_option("-k", vd_k);

    std::string vk_in;
    CLI::App* v_km = verify->add_subcommand("kmarc", "KM-arc type of a planar point set");
    v_km->add_option("-i,--input", vk_in)->required();

    std::string vc_in;
    std::uint64_t vc_d2 = 0;
    CLI::App* v_cyl = verify->add_subcommand("cylinder", "cylinder codeword recognition");
    v_cyl->add_option("-i,--input", vc_in)->required();
    v_cyl->add_option("--d2", vc_d2, "planar minimum weight; default wt(c)/q^{n-2}");

    // ---- mindist ----
    CommonArgs md;
    std::string method = "auto";
    bool census = false;
    CLI::App* mindist = app.add_subcommand("mindist", "exact minimum distance of the dual code");
    mindist->add_option("-n", md.n)->required();
    mindist->add_option("-q", md.q)->required();
    mindist->add_option("-k", md.k);
    mindist->add_option("--method", method, "auto|enum|bz");
    mindist->add_flag("--census", census, "list every minimum-weight codeword (enumeration only)");
    mindist->add_option("--enum-cap", enum_cap, "refuse enumeration beyond this many vectors");
    mindist->add_option("--jobs", jobs, "worker threads");
    mindist->add_option("-o,--output", md.output);

    // ---- bounds ----
    CommonArgs bd;
    CLI::App* bounds_cmd = app.add_subcommand("bounds", "bound formulas after the k -> 1 reduction");
    bounds_cmd->add_option("-n", bd.n)->required();
    bounds_cmd->add_option("-q", bd.q)->required();
    bounds_cmd->add_option("-k", bd.k);
    bounds_cmd->add_option("--format", bd.format, "json|table");

    // ---- spectrum ----
    std::string sp_in, sp_out;
    std::uint64_t sp_dim = 1;
    CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "secant spectrum CSV");
    spectrum_cmd->add_option("-i,--input", sp_in)->required();
    spectrum_cmd->add_option("--dim", sp_dim, "intersecting subspace dimension")->required();
    spectrum_cmd->add_option("--jobs", jobs);
    spectrum_cmd->add_option("-o,--output", sp_out);

    // ---- classify ----
    CommonArgs cl;
    CLI::App* classify = app.add_subcommand("classify", "minimum-weight census with cylinder verdicts");
    classify->add_option("-n", cl.n)->required();
    classify->add_option("-q", cl.q)->required();
    classify->add_option("--enum-cap", enum_cap);
    classify->add_option("--jobs", jobs);
    classify->add_option("-o,--output", cl.output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& err) {
        app.exit(err);  // prints the message and usage hint
        return 2;
    }

    if (geo_info->parsed()) {
        GeometryContext ctx = open_geometry(geo.n, geo.q);
        io::json j;
        j["n"] = geo.n;
        j["q"] = geo.q;
        j["p"] = ctx.field().p();
        j["e"] = ctx.field().e();
        io::json thetas = io::json::array();
        for (std::uint64_t i = 0; i <= geo.n; ++i) thetas.push_back(theta(int(i), geo.q));
        j["theta"] = thetas;
        io::json counts;
        for (std::uint64_t k = 0; k <= geo.n; ++k)
            counts[std::to_string(k)] = subspace_count(int(geo.n), int(k), geo.q);
        j["subspace_counts"] = counts;
        if (geo.format == "table") {
            std::cout << "PG(" << geo.n << "," << geo.q << ")  points: " << ctx.num_points() << "\n";
            for (std::uint64_t k = 0; k <= geo.n; ++k)
                std::cout << "  " << k << "-spaces: " << subspace_count(int(geo.n), int(k), geo.q) << "\n";
        } else {
            emit_json(j, "");
        }
        return 0;
    }

    if (code_build->parsed()) {
        GeometryContext ctx = open_geometry(code.n, code.q);
        PMatrix m = incidence_matrix(ctx, int(code.k));
        RankKernel rk = rank_and_kernel(m, ctx.descriptor());
        if (!matrix_out.empty()) emit(io::pmatrix_text(m), matrix_out);
        if (!kernel_out.empty()) {
            io::json basis = io::json::array();
            for (const Codeword& c : rk.kernel_basis) basis.push_back(io::to_json(c));
            io::save_json_file(kernel_out, basis);
        }
        io::json j;
        j["rows"] = m.rows;
        j["cols"] = m.cols;
        j["p"] = m.p;
        j["rank"] = rk.rank;
        j["kernel_dim"] = rk.kernel_basis.size();
        emit_json(j, "");
        return 0;
    }

    if (c_hyper->parsed()) {
        GeometryContext plane = open_geometry(2, hyp.q);
        emit_json(io::to_json(regular_hyperoval(plane)), hyp.output);
        return 0;
    }

    if (c_ld->parsed()) {
        GeometryContext ctx = open_geometry(ld.n, ld.q);
        const auto& hyperplanes = ctx.subspaces(int(ld.n) - 1);
        if (h1 >= hyperplanes.size() || h2 >= hyperplanes.size())
            throw std::invalid_argument("hyperplane id out of range");
        Codeword c = line_difference_codeword(ctx, hyperplanes[h1], hyperplanes[h2], std::uint8_t(alpha));
        emit_json(io::to_json(c), ld.output);
        return 0;
    }

    if (c_cyl->parsed()) {
        GeometryContext ctx = open_geometry(cyl.n, cyl.q);
        GeometryDescriptor plane_g{2, ctx.field().p(), ctx.field().e()};
        GeometryContext plane(plane_g);
        CylinderDescriptor d;
        if (base_file.empty()) {
            d.base_word = indicator(plane, regular_hyperoval(plane));
        } else {
            d.base_word = io::codeword_from_json(io::load_json_file(base_file));
        }
        const auto& planes = ctx.subspaces(2);
        const auto& verts = ctx.subspaces(int(cyl.n) - 3);
        if (seed == 0) {
            d.base_plane = planes[0];
            for (const Subspace& v : verts) {
                if (meet(ctx, v, d.base_plane).dim == -1) {
                    d.vertex = v;
                    break;
                }
            }
        } else {
            std::mt19937_64 rng(seed);
            while (true) {
                d.base_plane = planes[rng() % planes.size()];
                const Subspace& v = verts[rng() % verts.size()];
                if (meet(ctx, v, d.base_plane).dim == -1) {
                    d.vertex = v;
                    break;
                }
            }
        }
        Codeword word = cylinder_codeword(ctx, d);
        io::json j;
        j["descriptor"] = io::to_json(d);
        j["codeword"] = io::to_json(word);
        j["weight"] = weight(word);
        emit_json(j, cyl.output);
        return 0;
    }

    if (c_km->parsed()) {
        GeometryContext plane = open_geometry(2, km.q);
        emit_json(io::to_json(two_line_km_arc(plane, l1, l2)), km.output);
        return 0;
    }

    if (v_even->parsed()) {
        PointSet s = io::pointset_from_json(io::load_json_file(v_in));
        GeometryContext ctx(s.geometry);
        EvenSetCheck check = is_even_set(ctx, s, int(v_k));
        io::json j;
        j["all_even"] = check.all_even;
        j["non_empty"] = check.non_empty;
        j["size"] = s.ids.size();
        emit_json(j, "");
        return 0;
    }

    if (v_dual->parsed()) {
        Codeword c = io::codeword_from_json(io::load_json_file(vd_in));
        GeometryContext ctx(c.geometry);
        auto violation = dual_violation(ctx, c, int(vd_k));
        io::json j;
        j["is_dual"] = !violation.has_value();
        j["violating_subspace"] = violation.has_value() ? io::json(*violation) : io::json(nullptr);
        j["weight"] = weight(c);
        emit_json(j, "");
        return 0;
    }

    if (v_km->parsed()) {
        PointSet s = io::pointset_from_json(io::load_json_file(vk_in));
        GeometryContext ctx(s.geometry);
        auto type = km_arc_type(ctx, s);
        io::json j;
        j["type"] = type.has_value() ? io::json(*type) : io::json(nullptr);
        j["size"] = s.ids.size();
        emit_json(j, "");
        return 0;
    }

    if (v_cyl->parsed()) {
        Codeword c = io::codeword_from_json(io::load_json_file(vc_in));
        GeometryContext ctx(c.geometry);
        std::uint64_t d2 = vc_d2;
        if (d2 == 0) {
            std::uint64_t qpow = 1;
            for (std::uint64_t i = 0; i + 2 < c.geometry.n; ++i) qpow *= ctx.q();
            std::uint64_t w = weight(c);
            if (w % qpow != 0) throw std::invalid_argument("weight is not divisible by q^{n-2}; pass --d2");
            d2 = w / qpow;
        }
        CylinderRecognition rec = detect_cylinder_codeword(ctx, c, d2);
        io::json j = io::to_json(rec);
        j["weight"] = weight(c);
        j["d2"] = d2;
        emit_json(j, "");
        return 0;
    }

    if (mindist->parsed()) {
        GeometryContext ctx = open_geometry(md.n, md.q);
        RankKernel rk = rank_and_kernel(incidence_matrix(ctx, int(md.k)), ctx.descriptor());
        std::uint64_t p = ctx.field().p();
        std::uint64_t combos = 1;
        bool over = false;
        for (std::size_t i = 0; i < rk.kernel_basis.size(); ++i) {
            if (combos > enum_cap / p) {
                over = true;
                break;
            }
            combos *= p;
        }
        MinWeightResult r;
        if (method == "enum" || (method == "auto" && !over)) {
            r = exhaustive_min_weight(rk.kernel_basis, enum_cap, jobs);
        } else if (method == "bz" || method == "auto") {
            r = brouwer_zimmermann(rk.kernel_basis, std::nullopt, jobs);
        } else {
            throw std::invalid_argument("unknown method: " + method);
        }
        io::json j = io::to_json(r, census);
        j["n"] = md.n;
        j["q"] = md.q;
        j["k"] = md.k;
        j["rank"] = rk.rank;
        j["kernel_dim"] = rk.kernel_basis.size();
        emit_json(j, md.output);
        return 0;
    }

    if (bounds_cmd->parsed()) {
        BoundsReport r = bounds(bd.n, bd.q, bd.k, d2_table_from_env());
        if (bd.format == "table") {
            auto show = [](const std::optional<std::uint64_t>& v) {
                return v.has_value() ? std::to_string(*v) : std::string("-");
            };
            std::cout << "dual code bounds, n=" << r.n << " q=" << r.q << " k=" << r.k << " (reduced to k=1, n="
                      << r.reduced_params.second << ")\n";
            std::cout << "  lower  bagchi_inamdar : " << r.bagchi_inamdar << "\n";
            std::cout << "  lower  csajbok        : " << show(r.csajbok) << "\n";
            std::cout << "  lower  p_square       : " << show(r.p_square_lower) << "\n";
            std::cout << "  exact  ckdr (q even)  : " << show(r.ckdr) << "\n";
            std::cout << "  upper  lsv            : " << r.upper_lsv << "\n";
            std::cout << "  known  d2             : " << show(r.d2_known) << "\n";
            std::cout << "  value  q^{n-2} d2     : " << show(r.main_wt) << "\n";
        } else {
            emit_json(io::to_json(r), "");
        }
        return 0;
    }

    if (spectrum_cmd->parsed()) {
        io::json in = io::load_json_file(sp_in);
        SecantSpectrum sp;
        if (in.contains("ids")) {
            PointSet s = io::pointset_from_json(in);
            GeometryContext ctx(s.geometry);
            sp = secant_spectrum(ctx, s, int(sp_dim), jobs);
        } else {
            Codeword c = io::codeword_from_json(in);
            GeometryContext ctx(c.geometry);
            sp = secant_spectrum(ctx, c, int(sp_dim), jobs);
        }
        emit(io::spectrum_csv(sp), sp_out);
        return 0;
    }

    if (classify->parsed()) {
        if (cl.n < 3) throw std::invalid_argument("classification needs n >= 3");
        GeometryContext ctx = open_geometry(cl.n, cl.q);
        RankKernel rk = rank_and_kernel(incidence_matrix(ctx, 1), ctx.descriptor());
        MinWeightResult r = exhaustive_min_weight(rk.kernel_basis, enum_cap, jobs);
        std::uint64_t qpow = 1;
        for (std::uint64_t i = 0; i + 2 < cl.n; ++i) qpow *= cl.q;
        if (r.d % qpow != 0)
            throw std::runtime_error("minimum weight is not a multiple of q^{n-2}");
        std::uint64_t d2 = r.d / qpow;
        io::json words = io::json::array();
        bool all = true;
        for (const Codeword& w : r.witnesses) {
            CylinderRecognition rec = detect_cylinder_codeword(ctx, w, d2);
            all = all && rec.is_cylinder;
            io::json entry;
            entry["support"] = support(w);
            entry["is_cylinder"] = rec.is_cylinder;
            words.push_back(std::move(entry));
        }
        io::json j;
        j["n"] = cl.n;
        j["q"] = cl.q;
        j["d"] = r.d;
        j["d2"] = d2;
        j["witness_count"] = r.witnesses.size();
        j["all_cylinders"] = all;
        j["codewords"] = std::move(words);
        emit_json(j, cl.output);
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::domain_error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "internal error: " << err.what() << "\n";
        return 1;
    }
}

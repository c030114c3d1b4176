// Command line front end: validation, dimension tables, diagram verification and the
// negative-product search, each writing a JSON report.
//
// Exit codes: 0 all verdicts pass, 1 invalid input definition, 2 usage error,
// 3 a verdict failed, 4 engine error.

#include "stabcat/harness.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace stabcat;

namespace {

enum Exit { ok = 0, invalid_input = 1, usage = 2, verdict_failed = 3, engine_error = 4 };

struct Options {
    std::string out;
    std::string degrees;
    bool allow_scalar = false;
    std::size_t dim_cap = 4096;
    bool quiet = false;
};

void write_report(const nlohmann::json& j, const Options& opt)
{
    if (!opt.out.empty()) {
        std::ofstream f(opt.out);
        if (!f)
            throw UsageError("cannot write " + opt.out);
        f << j.dump(2) << "\n";
    }
    if (!opt.quiet)
        std::cout << j.dump(2) << "\n";
}

std::pair<int, int> window(const Options& opt, int lo, int hi)
{
    return opt.degrees.empty() ? std::make_pair(lo, hi) : parse_degree_window(opt.degrees);
}

// Refuses windows whose towers would leave desk scale.
void check_dimension_cap(const ModulePtr& x, int lo, int hi, std::size_t cap)
{
    TowerPtr t = shared_tower(x);
    for (int n : {lo - 1, hi + 1})
        if (t->step(n).mid->dim() > cap)
            throw UsageError("degree window reaches modules of dimension " + std::to_string(t->step(n).mid->dim()) +
                             " (cap " + std::to_string(cap) + "); narrow the window or raise --dim-cap");
}

int finish(const DiagramReport& r, const Options& opt)
{
    write_report(r.to_json(opt.allow_scalar), opt);
    for (const auto* d : r.all_verdicts())
        if (d->flagged())
            std::cerr << "note: " << r.diagram << " degree " << d->n << " commutes only up to the scalar "
                      << *d->scalar << "\n";
    return r.pass(opt.allow_scalar) ? ok : verdict_failed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Stable module categories of symmetric algebras: Tate cohomology, duality and transfer"};
    app.require_subcommand(1);
    Options opt;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--out", opt.out, "write the JSON report to this file");
        sub->add_flag("--quiet", opt.quiet, "do not print the report");
    };

    std::string algebra_path;
    auto* validate = app.add_subcommand("validate", "check an algebra definition");
    validate->add_option("algebra", algebra_path, "algebra JSON file")->required();
    common(validate);

    std::string u_path, v_path;
    auto* ext = app.add_subcommand("ext", "dimensions of Tate Ext between two modules");
    ext->add_option("--algebra", algebra_path, "algebra JSON file")->required();
    ext->add_option("--module-u", u_path, "source module")->required();
    ext->add_option("--module-v", v_path, "target module")->required();
    ext->add_option("--degrees", opt.degrees, "degree window a..b")->required();
    ext->add_option("--dim-cap", opt.dim_cap, "largest projective allowed in the towers");
    common(ext);

    auto* hh = app.add_subcommand("hh", "dimensions of Tate-Hochschild cohomology");
    hh->add_option("--algebra", algebra_path, "algebra JSON file")->required();
    hh->add_option("--degrees", opt.degrees, "degree window a..b")->required();
    hh->add_option("--dim-cap", opt.dim_cap, "largest projective allowed in the towers");
    common(hh);

    std::string which, fixture;
    auto* verify = app.add_subcommand("verify", "check the diagrams of a fixture");
    verify->add_option("diagram", which, "thm1, thm2, duality or adjunction")
        ->required()
        ->check(CLI::IsMember({"thm1", "thm2", "duality", "adjunction"}));
    verify->add_option("--fixture", fixture, "registered fixture name or manifest path")->required();
    verify->add_option("--degrees", opt.degrees, "degree window a..b (default: the fixture's)");
    verify->add_flag("--allow-scalar", opt.allow_scalar, "accept squares commuting up to a unit scalar");
    verify->add_option("--dim-cap", opt.dim_cap, "largest projective allowed in the towers");
    common(verify);

    std::string module_path;
    auto* search = app.add_subcommand("search-negative", "products of Tate classes in negative degrees");
    search->add_option("--algebra", algebra_path, "algebra JSON file")->required();
    search->add_option("--module", module_path, "module U; Hochschild mode when omitted");
    search->add_option("--degrees", opt.degrees, "degree window a..b")->required();
    search->add_option("--dim-cap", opt.dim_cap, "largest projective allowed in the towers");
    common(search);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return usage;
    }

    try {
        if (*validate) {
            AlgebraPtr a = load_algebra(algebra_path);
            nlohmann::json j{{"diagram", "validate"}, {"fixture", algebra_path}, {"algebra", a->name()},
                             {"dim", a->dim()}, {"char", a->prime()}, {"pass", true},
                             {"engine_version", engine_version}};
            write_report(j, opt);
            return ok;
        }
        if (*ext) {
            AlgebraPtr a = load_algebra(algebra_path);
            ModulePtr u = load_module_over(u_path, a), v = load_module_over(v_path, a);
            auto [lo, hi] = parse_degree_window(opt.degrees);
            check_dimension_cap(u, lo, hi, opt.dim_cap);
            return finish(ext_dimensions(u, v, lo, hi), opt);
        }
        if (*hh) {
            AlgebraPtr a = load_algebra(algebra_path);
            auto [lo, hi] = parse_degree_window(opt.degrees);
            check_dimension_cap(shared_regular_bimodule(a), lo, hi, opt.dim_cap);
            return finish(hh_dimensions(a, lo, hi), opt);
        }
        if (*verify) {
            Fixture fx = load_fixture(fixture);
            auto [lo, hi] = window(opt, fx.lo, fx.hi);
            check_dimension_cap(fx.m, lo - 1, hi + 1, opt.dim_cap);
            if (which == "thm1" || which == "duality")
                check_dimension_cap(shared_regular_bimodule(fx.a), lo - 1, hi + 1, opt.dim_cap);
            DiagramReport r;
            if (which == "thm1")
                r = verify_hochschild_transfer(fx, lo, hi);
            else if (which == "thm2")
                r = verify_ext_transfer(fx, lo, hi);
            else if (which == "duality")
                r = verify_duality(fx, lo, hi);
            else
                r = verify_adjunction(fx, lo, hi);
            return finish(r, opt);
        }
        if (*search) {
            AlgebraPtr a = load_algebra(algebra_path);
            ModulePtr u = module_path.empty() ? nullptr : load_module_over(module_path, a);
            auto [lo, hi] = parse_degree_window(opt.degrees);
            check_dimension_cap(u ? u : shared_regular_bimodule(a), 2 * lo, 2 * hi, opt.dim_cap);
            return finish(search_negative_products(a, u, lo, hi), opt);
        }
    } catch (const ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return invalid_input;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return engine_error;
    }
    return usage;
}

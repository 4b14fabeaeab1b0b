#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "liemod/complexity.hpp"
#include "liemod/group_algebra.hpp"
#include "liemod/lie_module.hpp"
#include "liemod/report_json.hpp"
#include "liemod/subgroups.hpp"
#include "liemod/variety.hpp"

namespace {

struct RunConfig {
    unsigned n = 0;
    unsigned p = 2;
    unsigned m = 0;
    std::string shape;
    std::string mode = "full";
    std::string out = "json";
    unsigned ext = 2;
    unsigned point_ext = 1;
    std::vector<uint32_t> alpha;
    unsigned threads = 1;
    std::string cache_dir;
    bool force = false;
};

void emit(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

liemod::VarietyOptions engine_options(const RunConfig& cfg) {
    liemod::VarietyOptions o;
    o.mode = cfg.mode;
    o.e_max = cfg.ext;
    o.point_alpha = cfg.alpha;
    o.point_e = cfg.point_ext;
    o.threads = cfg.threads;
    o.force = cfg.force;
    o.cache_dir = cfg.cache_dir;
    return o;
}

void cmd_dim(const RunConfig& cfg) {
    nlohmann::json j;
    j["schema"] = 1;
    j["kind"] = "dim";
    j["n"] = cfg.n;
    j["p"] = cfg.p;
    j["dim"] = liemod::factorial(cfg.n - 1);
    if (cfg.n <= 7) {
        const liemod::FieldContext F(cfg.p);
        j["verified"] = liemod::verify_dimension(cfg.n, F, cfg.threads);
    }
    emit(j);
}

void cmd_omega(const RunConfig& cfg) {
    const liemod::FieldContext F(cfg.p);
    const liemod::GroupAlgebraElement w = liemod::dsw_element(cfg.n, F);
    nlohmann::json j;
    j["schema"] = 1;
    j["kind"] = "omega";
    j["n"] = cfg.n;
    j["p"] = cfg.p;
    j["support"] = w.terms().size();
    j["n_mod_p"] = cfg.n % cfg.p;
    j["square_ok"] = liemod::omega_square_check(cfg.n, F);
    if (cfg.n <= 5) j["text"] = liemod::ga_to_string(w);
    emit(j);
}

void cmd_subgroups(const RunConfig& cfg) {
    nlohmann::json j;
    j["schema"] = 1;
    j["kind"] = "subgroups";
    j["n"] = cfg.n;
    j["p"] = cfg.p;
    j["shapes"] = nlohmann::json::array();
    for (const liemod::ElemAbelianSubgroup& E : liemod::maximal_elem_abelians(cfg.n, cfg.p)) {
        nlohmann::json sj;
        sj["shape"] = E.shape.to_string();
        sj["rank"] = E.rank();
        sj["generators"] = nlohmann::json::array();
        for (const liemod::Permutation& g : E.generators)
            sj["generators"].push_back(liemod::cycle_string(g));
        j["shapes"].push_back(std::move(sj));
    }
    emit(j);
}

void cmd_variety(const RunConfig& cfg) {
    const liemod::SubgroupShape shape = liemod::SubgroupShape::parse(cfg.shape, cfg.p);
    const liemod::VarietyReport rep =
        liemod::subgroup_complexity(cfg.n, cfg.p, shape, engine_options(cfg));
    if (cfg.out == "csv")
        std::cout << liemod::variety_to_csv(rep);
    else
        emit(liemod::variety_to_json(rep));
}

void cmd_complexity(const RunConfig& cfg) {
    const liemod::ComplexityCertificate cert =
        liemod::assemble(cfg.n, cfg.p, engine_options(cfg));
    if (cfg.out == "csv") {
        std::cout << "shape,lo,hi,certified,value,method\n";
        for (const liemod::SubgroupResult& s : cert.subgroups) {
            const liemod::DimensionSummary& d = s.report.dimension;
            std::cout << "\"" << s.shape.to_string() << "\"," << d.lo << "," << d.hi << ","
                      << (d.certified ? "1" : "0") << "," << d.value << "," << d.method << "\n";
        }
    } else {
        emit(liemod::certificate_to_json(cert));
    }
}

void cmd_conjecture(const RunConfig& cfg) {
    emit(liemod::conjecture_to_json(liemod::conjecture_check(cfg.m, cfg.p, engine_options(cfg))));
}

void cmd_consistency(const RunConfig& cfg) {
    emit(liemod::consistency_to_json(
        liemod::p_power_consistency(cfg.n, cfg.p, engine_options(cfg))));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact rank-variety and complexity engine for Lie powers of symmetric groups"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&cfg](CLI::App* c) {
        c->add_option("--p", cfg.p, "prime characteristic")->capture_default_str();
        c->add_option("--threads", cfg.threads, "worker count")->capture_default_str();
        c->add_flag("--force", cfg.force, "override resource caps");
        c->add_option("--cache-dir", cfg.cache_dir, "action-matrix cache directory");
    };

    CLI::App* cdim = app.add_subcommand("dim", "module dimension (n-1)! with oracle check for n <= 7");
    cdim->add_option("--n", cfg.n, "degree")->required();
    add_common(cdim);

    CLI::App* comega = app.add_subcommand("omega", "idempotent-scaled projector: support and square identity");
    comega->add_option("--n", cfg.n, "degree")->required();
    add_common(comega);

    CLI::App* csub = app.add_subcommand("subgroups", "distinguished maximal elementary abelian subgroups");
    csub->add_option("--n", cfg.n, "degree")->required();
    add_common(csub);

    CLI::App* cvar = app.add_subcommand("variety", "rank-variety report for one subgroup shape");
    cvar->add_option("--n", cfg.n, "degree")->required();
    cvar->add_option("--shape", cfg.shape, "subgroup shape r1,r2,...")->required();
    cvar->add_option("--mode", cfg.mode, "point|scan|generic|sigma|full")->capture_default_str();
    cvar->add_option("--ext", cfg.ext, "max extension degree for scans (1..4)")->capture_default_str();
    cvar->add_option("--alpha", cfg.alpha, "point coordinates for --mode point")->delimiter(',');
    cvar->add_option("--point-ext", cfg.point_ext, "extension degree of --alpha codes")
        ->capture_default_str();
    cvar->add_option("--out", cfg.out, "json|csv")->capture_default_str();
    add_common(cvar);

    CLI::App* ccpx = app.add_subcommand("complexity", "assembled complexity certificate");
    ccpx->add_option("--n", cfg.n, "degree")->required();
    ccpx->add_option("--ext", cfg.ext, "max extension degree for scans (1..4)")->capture_default_str();
    ccpx->add_option("--out", cfg.out, "json|csv")->capture_default_str();
    add_common(ccpx);

    CLI::App* cconj = app.add_subcommand("conjecture", "is the variety of degree p^m full over the regular subgroup");
    cconj->add_option("--m", cfg.m, "rank of the regular subgroup")->required();
    cconj->add_option("--ext", cfg.ext, "max extension degree for scans (1..4)")->capture_default_str();
    add_common(cconj);

    CLI::App* ccons = app.add_subcommand("consistency", "degree n vs prime-power reduction cross-check");
    ccons->add_option("--n", cfg.n, "degree (a p-power times a cofactor > 1)")->required();
    ccons->add_option("--ext", cfg.ext, "max extension degree for scans (1..4)")->capture_default_str();
    add_common(ccons);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    try {
        if (app.got_subcommand(cdim)) cmd_dim(cfg);
        else if (app.got_subcommand(comega)) cmd_omega(cfg);
        else if (app.got_subcommand(csub)) cmd_subgroups(cfg);
        else if (app.got_subcommand(cvar)) cmd_variety(cfg);
        else if (app.got_subcommand(ccpx)) cmd_complexity(cfg);
        else if (app.got_subcommand(cconj)) cmd_conjecture(cfg);
        else if (app.got_subcommand(ccons)) cmd_consistency(cfg);
    } catch (const liemod::ResourceLimitError& e) {
        std::cerr << "resource refusal: " << e.what() << "\n";
        return 2;
    } catch (const liemod::BlowUpError& e) {
        std::cerr << "resource refusal: " << e.what() << "\n";
        return 2;
    } catch (const liemod::ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 3;
    } catch (const liemod::CacheError& e) {
        std::cerr << "cache error: " << e.what() << "\n";
        return 3;
    } catch (const liemod::InternalError& e) {
        std::cerr << "internal assertion failed: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}

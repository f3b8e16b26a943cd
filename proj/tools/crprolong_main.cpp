// Command-line front end; talks to the core exclusively through the C API.

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "crprolong.h"

namespace {

struct StructureHandle {
    crp_structure* h = nullptr;
    ~StructureHandle() { crp_structure_free(h); }
};

struct MapHandle {
    crp_map* h = nullptr;
    ~MapHandle() { crp_map_free(h); }
};

int finish(crp_status st, char* report) {
    if (report) {
        std::fputs(report, stdout);
        crp_string_free(report);
    }
    if (st != CRP_OK && st != CRP_VERIFY_FAIL) {
        std::fprintf(stderr, "error: %s\n", crp_last_error());
    }
    return static_cast<int>(st);
}

int load_structure(const std::string& path, StructureHandle& out) {
    crp_status st = crp_structure_load_file(path.c_str(), &out.h);
    if (st != CRP_OK) {
        std::fprintf(stderr, "error: %s\n", crp_last_error());
        return static_cast<int>(st);
    }
    return 0;
}

std::vector<double> parse_point(const std::string& csv, int n, bool& ok) {
    std::vector<double> vals;
    ok = true;
    if (csv.empty()) return std::vector<double>(static_cast<std::size_t>(2 * n), 0.0);
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            vals.push_back(std::stod(item));
        } catch (...) {
            ok = false;
            return vals;
        }
    }
    if (vals.size() != static_cast<std::size_t>(2 * n)) ok = false;
    return vals;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"crprolong: verification toolkit for almost complex structures, J-holomorphic "
                 "frames and the tangential CR calculus"};
    app.require_subcommand(1);

    crp_options opts;
    crp_options_init(&opts);
    std::string format = "text";
    if (const char* env_seed = std::getenv("CRPROLONG_SEED")) {
        opts.seed = static_cast<unsigned long long>(std::strtoull(env_seed, nullptr, 10));
    }
    app.add_option("--seed", opts.seed, "random seed (overrides CRPROLONG_SEED)");
    app.add_option("--trials", opts.trials, "sample count for numeric zero tests")->check(CLI::PositiveNumber);
    app.add_option("--tol", opts.tolerance, "numeric tolerance")->check(CLI::PositiveNumber);
    app.add_option("--truncation-order", opts.truncation_order, "surface reduction order");
    app.add_option("--format", format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));

    std::string file, map_file, src_file, tgt_file, point_csv;
    int field = 1, j_idx = 1, k_idx = 2, dim = 2;
    std::string bind_file;

    auto* c_check = app.add_subcommand("check-structure", "involution, reality and shape constraints");
    c_check->add_option("file", file, "structure JSON file")->required();

    auto* c_frame = app.add_subcommand("frame", "build the J-holomorphic frame and verify it");
    c_frame->add_option("file", file, "structure JSON file")->required();

    auto* c_br = app.add_subcommand("brackets", "structure constants of the frame brackets");
    c_br->add_option("file", file, "structure JSON file")->required();

    auto* c_levi = app.add_subcommand("levi", "Levi form value with a finite-difference oracle");
    c_levi->add_option("file", file, "structure JSON file")->required();
    c_levi->add_option("--field", field, "frame field index (1..n-1)");
    c_levi->add_option("--point", point_csv, "point as re,im,...,re,im (defaults to 0)");

    auto* c_def = app.add_subcommand("defect", "integrability defect projection of [X_j, X_k]");
    c_def->add_option("file", file, "structure JSON file")->required();
    c_def->add_option("--j", j_idx, "first field index");
    c_def->add_option("--k", k_idx, "second field index");

    auto* c_id = app.add_subcommand("identities", "the displayed-identity suite and membership chain");
    c_id->add_option("--n", dim, "dimension for generic constants");
    c_id->add_option("--bind", bind_file, "bind constants to a standard/model structure file");

    auto* c_pr = app.add_subcommand("prolong-report", "order-3 complete-system report");
    c_pr->add_option("--n", dim, "dimension for generic constants");
    c_pr->add_option("--bind", bind_file, "bind constants to a standard/model structure file");

    auto* c_vm = app.add_subcommand("verify-map", "pseudo-holomorphy and tangential residuals");
    c_vm->add_option("map", map_file, "map JSON file")->required();
    c_vm->add_option("source", src_file, "source structure JSON file")->required();
    c_vm->add_option("target", tgt_file, "target structure JSON file")->required();

    CLI11_PARSE(app, argc, argv);
    opts.json_output = (format == "json") ? 1 : 0;

    char* report = nullptr;

    if (c_check->parsed()) {
        StructureHandle s;
        if (int rc = load_structure(file, s)) return rc;
        return finish(crp_check_structure(s.h, &opts, &report), report);
    }
    if (c_frame->parsed()) {
        StructureHandle s;
        if (int rc = load_structure(file, s)) return rc;
        return finish(crp_frame_report(s.h, &opts, &report), report);
    }
    if (c_br->parsed()) {
        StructureHandle s;
        if (int rc = load_structure(file, s)) return rc;
        return finish(crp_brackets_report(s.h, &opts, &report), report);
    }
    if (c_levi->parsed()) {
        StructureHandle s;
        if (int rc = load_structure(file, s)) return rc;
        bool ok = true;
        auto pt = parse_point(point_csv, crp_structure_dim(s.h), ok);
        if (!ok) {
            std::fprintf(stderr, "error: --point expects %d comma-separated numbers\n",
                         2 * crp_structure_dim(s.h));
            return CRP_INPUT_ERROR;
        }
        double value = 0.0;
        return finish(crp_levi(s.h, field, pt.data(), &opts, &value, &report), report);
    }
    if (c_def->parsed()) {
        StructureHandle s;
        if (int rc = load_structure(file, s)) return rc;
        return finish(crp_defect_report(s.h, j_idx, k_idx, &opts, &report), report);
    }
    if (c_id->parsed()) {
        StructureHandle bind;
        if (!bind_file.empty()) {
            if (int rc = load_structure(bind_file, bind)) return rc;
        }
        return finish(crp_identities_report(dim, bind.h, &opts, &report), report);
    }
    if (c_pr->parsed()) {
        StructureHandle bind;
        if (!bind_file.empty()) {
            if (int rc = load_structure(bind_file, bind)) return rc;
        }
        return finish(crp_prolong_report(dim, bind.h, &opts, &report), report);
    }
    if (c_vm->parsed()) {
        MapHandle f;
        crp_status st = crp_map_load_file(map_file.c_str(), &f.h);
        if (st != CRP_OK) {
            std::fprintf(stderr, "error: %s\n", crp_last_error());
            return static_cast<int>(st);
        }
        StructureHandle src, tgt;
        if (int rc = load_structure(src_file, src)) return rc;
        if (int rc = load_structure(tgt_file, tgt)) return rc;
        return finish(crp_verify_map(f.h, src.h, tgt.h, &opts, &report), report);
    }
    return CRP_INPUT_ERROR;
}

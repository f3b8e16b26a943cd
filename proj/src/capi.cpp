#include "crprolong.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "reports.hpp"

using namespace crp;

struct crp_structure {
    LoadedStructure s;
    std::string kind_name;
};

struct crp_map {
    SymbolicMap f;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(::malloc(s.size() + 1));
    if (!out) return nullptr;
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

crp_status status_of_error(const Error& e) {
    switch (e.code()) {
        case Errc::SyntaxError:
        case Errc::UnknownVariable:
        case Errc::IndexOutOfRange:
        case Errc::BadInput:
        case Errc::InvalidSqrtArgument:
            return CRP_INPUT_ERROR;
        case Errc::ConstraintViolated:
            return CRP_VERIFY_FAIL;
        default:
            return CRP_INTERNAL_ERROR;
    }
}

reports::RunOptions convert(const crp_options* opts) {
    reports::RunOptions o;
    if (opts) {
        if (opts->trials < 1) fail(Errc::BadInput, "trials must be >= 1");
        if (!(opts->tolerance > 0)) fail(Errc::BadInput, "tolerance must be positive");
        o.trials = opts->trials;
        o.tol = opts->tolerance;
        o.seed = opts->seed;
        o.trunc_order = opts->truncation_order;
        o.json = opts->json_output != 0;
    }
    return o;
}

template <typename Fn>
crp_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        g_last_error = std::string(errc_name(e.code())) + ": " + e.what();
        return status_of_error(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return CRP_INTERNAL_ERROR;
    }
}

crp_status outcome_status(const reports::Outcome& out, char** out_report) {
    if (out_report) *out_report = dup_string(out.text);
    return out.pass ? CRP_OK : CRP_VERIFY_FAIL;
}

std::vector<std::complex<double>> point_from(const double* re_im, int n) {
    if (!re_im) return std::vector<std::complex<double>>(static_cast<std::size_t>(n), {0.0, 0.0});
    std::vector<std::complex<double>> p(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) p[static_cast<std::size_t>(j)] = {re_im[2 * j], re_im[2 * j + 1]};
    return p;
}

} // namespace

extern "C" {

void crp_options_init(crp_options* opts) {
    if (!opts) return;
    opts->trials = 20;
    opts->tolerance = 1e-9;
    opts->seed = 0;
    opts->truncation_order = 4;
    opts->json_output = 0;
}

const char* crp_version(void) { return "crprolong 1.0.0"; }

const char* crp_last_error(void) { return g_last_error.c_str(); }

void crp_string_free(char* s) { ::free(s); }

crp_status crp_structure_load_file(const char* path, crp_structure** out) {
    if (!path || !out) return CRP_INPUT_ERROR;
    return guarded([&] {
        auto h = new crp_structure{load_structure_file(path), {}};
        h->kind_name = structure_kind_name(h->s.kind);
        *out = h;
        return CRP_OK;
    });
}

crp_status crp_structure_load_json(const char* json_text, crp_structure** out) {
    if (!json_text || !out) return CRP_INPUT_ERROR;
    return guarded([&] {
        auto h = new crp_structure{load_structure_json(json_text), {}};
        h->kind_name = structure_kind_name(h->s.kind);
        *out = h;
        return CRP_OK;
    });
}

void crp_structure_free(crp_structure* s) { delete s; }

int crp_structure_dim(const crp_structure* s) { return s ? s->s.n : 0; }

const char* crp_structure_kind(const crp_structure* s) { return s ? s->kind_name.c_str() : ""; }

crp_status crp_map_load_file(const char* path, crp_map** out) {
    if (!path || !out) return CRP_INPUT_ERROR;
    return guarded([&] {
        *out = new crp_map{load_map_file(path)};
        return CRP_OK;
    });
}

crp_status crp_map_load_json(const char* json_text, crp_map** out) {
    if (!json_text || !out) return CRP_INPUT_ERROR;
    return guarded([&] {
        *out = new crp_map{load_map_json(json_text)};
        return CRP_OK;
    });
}

void crp_map_free(crp_map* m) { delete m; }

crp_status crp_check_structure(const crp_structure* s, const crp_options* opts, char** out_report) {
    if (!s) return CRP_INPUT_ERROR;
    return guarded([&] { return outcome_status(reports::check_structure_report(s->s, convert(opts)), out_report); });
}

crp_status crp_frame_report(const crp_structure* s, const crp_options* opts, char** out_report) {
    if (!s) return CRP_INPUT_ERROR;
    return guarded([&] { return outcome_status(reports::frame_report(s->s, convert(opts)), out_report); });
}

crp_status crp_brackets_report(const crp_structure* s, const crp_options* opts, char** out_report) {
    if (!s) return CRP_INPUT_ERROR;
    return guarded([&] { return outcome_status(reports::brackets_report(s->s, convert(opts)), out_report); });
}

crp_status crp_levi(const crp_structure* s, int field_index, const double* point_re_im,
                    const crp_options* opts, double* out_value, char** out_report) {
    if (!s) return CRP_INPUT_ERROR;
    return guarded([&] {
        auto p = point_from(point_re_im, s->s.n);
        auto out = reports::levi_report(s->s, field_index, p, convert(opts), out_value);
        return outcome_status(out, out_report);
    });
}

crp_status crp_defect_report(const crp_structure* s, int j, int k, const crp_options* opts,
                             char** out_report) {
    if (!s) return CRP_INPUT_ERROR;
    return guarded([&] { return outcome_status(reports::defect_report(s->s, j, k, convert(opts)), out_report); });
}

crp_status crp_identities_report(int n, const crp_structure* binding, const crp_options* opts,
                                 char** out_report) {
    return guarded([&] {
        if (!binding && (n < 2 || n > 6)) fail(Errc::BadInput, "identities: n out of range [2,6]");
        return outcome_status(
            reports::identities_report(n, binding ? &binding->s : nullptr, convert(opts)), out_report);
    });
}

crp_status crp_prolong_report(int n, const crp_structure* binding, const crp_options* opts,
                              char** out_report) {
    return guarded([&] {
        if (!binding && (n < 2 || n > 4)) fail(Errc::BadInput, "prolong-report: n out of range [2,4]");
        return outcome_status(reports::prolong_report(n, binding ? &binding->s : nullptr, convert(opts)),
                              out_report);
    });
}

crp_status crp_verify_map(const crp_map* f, const crp_structure* source, const crp_structure* target,
                          const crp_options* opts, char** out_report) {
    if (!f || !source || !target) return CRP_INPUT_ERROR;
    return guarded([&] {
        if (f->f.n != source->s.n || f->f.n != target->s.n)
            fail(Errc::BadInput, "map and structures have different dimensions");
        return outcome_status(reports::verify_map_report(f->f, source->s, target->s, convert(opts)),
                              out_report);
    });
}

crp_status crp_expr_eval(const char* expr, int n, const double* point_re_im, double* out_re,
                         double* out_im) {
    if (!expr || !out_re || !out_im) return CRP_INPUT_ERROR;
    return guarded([&] {
        Ex e = ex_parse(expr, n);
        auto v = ex_eval(e, point_from(point_re_im, n));
        *out_re = v.real();
        *out_im = v.imag();
        return CRP_OK;
    });
}

crp_status crp_expr_roundtrip(const char* expr, int n, char** out_printed) {
    if (!expr || !out_printed) return CRP_INPUT_ERROR;
    return guarded([&] {
        Ex e = ex_parse(expr, n);
        *out_printed = dup_string(ex_print(e));
        return CRP_OK;
    });
}

} // extern "C"

#include "bd3/bd3_c.h"

#include "bd3/classify.hpp"
#include "bd3/errors.hpp"
#include "bd3/max_overlap.hpp"
#include "bd3/qubit3.hpp"
#include "bd3/statefile.hpp"
#include "bd3/verify.hpp"

#include <cstring>
#include <memory>
#include <string>

using namespace bd3;

struct bd3_state {
    Trivector t;
};
struct bd3_qstate {
    ThreeQubitState q;
};
struct bd3_expansion {
    CIExpansion e;
};
struct bd3_overlap {
    OverlapResult base;
    // optional payloads depending on class
    bool has_expansion = false;
    CIExpansion expansion;
    bool has_qstate = false;
    ThreeQubitState qapprox;
};

namespace {

thread_local std::string g_last_error;

bd3_status fail(bd3_status code, const char* what) {
    g_last_error = what ? what : "";
    return code;
}

template <typename Fn>
bd3_status guarded(Fn&& fn) {
    try {
        fn();
        return BD3_OK;
    } catch (const io_error& e) {
        switch (e.code()) {
            case IoCode::Parse: return fail(BD3_ERR_PARSE, e.what());
            case IoCode::Version: return fail(BD3_ERR_VERSION, e.what());
            case IoCode::Format: return fail(BD3_ERR_FORMAT, e.what());
            default: return fail(BD3_ERR_IO, e.what());
        }
    } catch (const precondition_error& e) {
        return fail(BD3_ERR_PRECONDITION, e.what());
    } catch (const internal_error& e) {
        return fail(BD3_ERR_INTERNAL, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(BD3_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return fail(BD3_ERR_INTERNAL, e.what());
    }
}

constexpr TypeTag kTagOrder[] = {TypeTag::Type1,  TypeTag::Type2a, TypeTag::Type2b, TypeTag::Type3a,
                                 TypeTag::Type3b, TypeTag::CIS,    TypeTag::CID,    TypeTag::OrthoW,
                                 TypeTag::OrthoGHZ, TypeTag::LowRank};

} // namespace

extern "C" {

const char* bd3_version(void) { return "1.0.0"; }

const char* bd3_last_error(void) { return g_last_error.c_str(); }

void bd3_state_free(bd3_state* s) { delete s; }
void bd3_qstate_free(bd3_qstate* q) { delete q; }
void bd3_expansion_free(bd3_expansion* e) { delete e; }
void bd3_overlap_free(bd3_overlap* o) { delete o; }

bd3_status bd3_state_load(const char* path, bd3_state** out) {
    if (!path || !out) return fail(BD3_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = new bd3_state{load_state(path)}; });
}

bd3_status bd3_state_save(const bd3_state* s, const char* path) {
    if (!s || !path) return fail(BD3_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { save_state(s->t, path); });
}

bd3_status bd3_state_random(uint64_t seed, const char* class_tag, bd3_state** out) {
    if (!out) return fail(BD3_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        std::optional<TypeTag> tag;
        if (class_tag) {
            tag = tag_from_name(class_tag);
            if (!tag) throw std::invalid_argument(std::string("unknown class tag '") + class_tag + "'");
        }
        *out = new bd3_state{random_state(seed, tag)};
    });
}

bd3_status bd3_state_from_amplitudes(const double* re20, const double* im20, bd3_state** out) {
    if (!re20 || !im20 || !out) return fail(BD3_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        Trivector t(6, 3);
        for (int i = 0; i < 20; ++i) t[i] = {re20[i], im20[i]};
        *out = new bd3_state{std::move(t)};
    });
}

bd3_status bd3_state_amplitudes(const bd3_state* s, double* re20, double* im20) {
    if (!s || !re20 || !im20) return fail(BD3_ERR_INVALID_ARGUMENT, "null argument");
    for (int i = 0; i < 20; ++i) {
        re20[i] = std::real(s->t[i]);
        im20[i] = std::imag(s->t[i]);
    }
    return BD3_OK;
}

double bd3_state_norm(const bd3_state* s) { return s ? s->t.norm() : 0.0; }

bd3_status bd3_state_overlap(const bd3_state* a, const bd3_state* b, double* re, double* im) {
    if (!a || !b || !re || !im) return fail(BD3_ERR_INVALID_ARGUMENT, "null argument");
    const cplx v = inner(a->t, b->t);
    *re = std::real(v);
    *im = std::imag(v);
    return BD3_OK;
}

bd3_status bd3_analyze(const bd3_state* s, bd3_analysis* out) {
    if (!s || !out) return fail(BD3_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const NaturalSpectrum ns = natural_spectrum(s->t);
        const RepresentabilityReport rep = check_representability(ns.lambda);
        const InvariantReport inv = invariants(s->t);
        for (int i = 0; i < 6; ++i) out->occupations[i] = ns.lambda[i];
        for (int i = 0; i < 3; ++i) out->pair_sums[i] = rep.pair_sums[i];
        out->inequality_margin = rep.inequality_margin;
        out->equalities_ok = rep.equalities_ok;
        out->inequality_ok = rep.inequality_ok;
        out->saturated = rep.saturated;
        out->rank = inv.rank;
        out->m1 = inv.m1;
        out->sym1 = inv.sym123[0];
        out->sym2 = inv.sym123[1];
        out->sym3 = inv.sym123[2];
        out->hyperdet_mod2 = inv.hyperdet_mod2;
        out->gl6_class = static_cast<int>(inv.gl6);
        out->borderline = inv.borderline;
    });
}

bd3_status bd3_detect_types(const bd3_state* s, int restarts, uint64_t seed, unsigned* tags_mask) {
    if (!s || !tags_mask) return fail(BD3_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        TypeTags tags = detect_types(s->t, restarts, seed);
        unsigned mask = 0;
        for (int k = 0; k < 10; ++k)
            if (tags.count(kTagOrder[k])) mask |= 1u << k;
        *tags_mask = mask;
    });
}

const char* bd3_tag_name(int bit_index) {
    if (bit_index < 0 || bit_index >= 10) return nullptr;
    static thread_local std::string name;
    name = tag_name(kTagOrder[bit_index]);
    return name.c_str();
}

bd3_status bd3_verify(const bd3_state* s, int restarts, uint64_t seed, char* report, int report_len,
                      int* failures) {
    if (!s || !failures) return fail(BD3_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        VerifyReport vr = verify_state(s->t, restarts, seed);
        *failures = vr.failures;
        if (report && report_len > 0) {
            std::string text = vr.text();
            std::strncpy(report, text.c_str(), static_cast<size_t>(report_len) - 1);
            report[report_len - 1] = '\0';
        }
    });
}

bd3_status bd3_canonical(const bd3_state* s, const char* form, int restarts, uint64_t seed,
                         bd3_expansion** out) {
    if (!s || !form || !out) return fail(BD3_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const std::string f = form;
        CIExpansion e;
        if (f == "bd") {
            e = bd_expansion(s->t);
        } else if (f == "lone") {
            e = lone_orbital(s->t);
        } else if (f == "cis") {
            CisOverlap ov = max_overlap_cis(s->t, restarts, seed);
            if (ov.base.overlap < 1.0 - 1e-7)
                throw precondition_error("canonical cis: state is not CIS (best overlap " +
                                         std::to_string(ov.base.overlap) + ")");
            e = cis_canonical(s->t, ov.ref_frame);
        } else if (f == "cid") {
            CidOverlap ov = max_overlap_cid(s->t, restarts, seed);
            if (ov.base.overlap < 1.0 - 1e-7)
                throw precondition_error("canonical cid: state is not CID (best overlap " +
                                         std::to_string(ov.base.overlap) + ")");
            e = cid_canonical(s->t, ov.ref_frame);
        } else if (f == "slater5") {
            e = expansion_from_slater(s->t, max_overlap_slater(s->t, restarts, seed));
        } else if (f == "cis5") {
            e = expansion_from_cis(s->t, max_overlap_cis(s->t, restarts, seed));
        } else {
            throw std::invalid_argument("unknown canonical form '" + f + "'");
        }
        *out = new bd3_expansion{std::move(e)};
    });
}

int bd3_expansion_term_count(const bd3_expansion* e) {
    return e ? static_cast<int>(e->e.terms.size()) : 0;
}

void bd3_expansion_term(const bd3_expansion* e, int i, int idx3[3], double* re, double* im) {
    if (!e || i < 0 || i >= static_cast<int>(e->e.terms.size())) return;
    const CITerm& term = e->e.terms[i];
    for (int k = 0; k < 3; ++k) idx3[k] = term.orbitals[k] + 1;
    if (re) *re = std::real(term.coeff);
    if (im) *im = std::imag(term.coeff);
}

const char* bd3_expansion_shape(const bd3_expansion* e) {
    static thread_local std::string s;
    s = e ? shape_name(e->e.shape) : "";
    return s.c_str();
}

const char* bd3_expansion_label(const bd3_expansion* e, int orbital) {
    if (!e || orbital < 0 || orbital > 5) return nullptr;
    return e->e.basis.labels[orbital].c_str();
}

void bd3_expansion_basis(const bd3_expansion* e, double* re36, double* im36) {
    if (!e || !re36 || !im36) return;
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) {
            re36[r * 6 + c] = std::real(e->e.basis.cols(r, c));
            im36[r * 6 + c] = std::imag(e->e.basis.cols(r, c));
        }
}

double bd3_expansion_residual(const bd3_expansion* e, const bd3_state* source) {
    if (!e || !source) return -1.0;
    return e->e.residual(source->t);
}

bd3_status bd3_expansion_save(const bd3_expansion* e, const char* path) {
    if (!e || !path) return fail(BD3_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { save_expansion(e->e, path); });
}

bd3_status bd3_maxoverlap(const bd3_state* s, const char* klass, int restarts, uint64_t seed,
                          bd3_overlap** out) {
    if (!s || !klass || !out) return fail(BD3_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const std::string k = klass;
        auto o = std::make_unique<bd3_overlap>();
        if (k == "slater") {
            SlaterOverlap r = max_overlap_slater(s->t, restarts, seed);
            o->base = r.base;
            o->expansion = expansion_from_slater(s->t, r);
            o->has_expansion = true;
        } else if (k == "lowrank") {
            o->base = max_overlap_lowrank(s->t).base;
        } else if (k == "cis") {
            CisOverlap r = max_overlap_cis(s->t, restarts, seed);
            o->base = r.base;
            o->expansion = expansion_from_cis(s->t, r);
            o->has_expansion = true;
        } else if (k == "cid") {
            CidOverlap r = max_overlap_cid(s->t, restarts, seed);
            o->base = r.base;
            o->expansion = r.chi_canonical;
            o->has_expansion = true;
        } else {
            throw std::invalid_argument("unknown max-overlap class '" + k + "'");
        }
        *out = o.release();
    });
}

double bd3_overlap_value(const bd3_overlap* o) { return o ? o->base.overlap : -1.0; }

int bd3_overlap_restarts(const bd3_overlap* o) { return o ? o->base.restarts_used : 0; }

int bd3_overlap_cert_count(const bd3_overlap* o) {
    return o ? static_cast<int>(o->base.certificate.size()) : 0;
}

const char* bd3_overlap_cert_name(const bd3_overlap* o, int i) {
    if (!o || i < 0 || i >= static_cast<int>(o->base.certificate.size())) return nullptr;
    auto it = o->base.certificate.begin();
    std::advance(it, i);
    return it->first.c_str();
}

double bd3_overlap_cert_value(const bd3_overlap* o, int i) {
    if (!o || i < 0 || i >= static_cast<int>(o->base.certificate.size())) return 0.0;
    auto it = o->base.certificate.begin();
    std::advance(it, i);
    return it->second;
}

bd3_status bd3_overlap_approximant(const bd3_overlap* o, bd3_state** out) {
    if (!o || !out) return fail(BD3_ERR_INVALID_ARGUMENT, "null argument");
    *out = new bd3_state{o->base.approximant};
    return BD3_OK;
}

bd3_status bd3_overlap_expansion(const bd3_overlap* o, bd3_expansion** out) {
    if (!o || !out) return fail(BD3_ERR_INVALID_ARGUMENT, "null argument");
    if (!o->has_expansion) return fail(BD3_ERR_PRECONDITION, "this overlap class carries no expansion");
    *out = new bd3_expansion{o->expansion};
    return BD3_OK;
}

bd3_status bd3_overlap_qapproximant(const bd3_overlap* o, bd3_qstate** out) {
    if (!o || !out) return fail(BD3_ERR_INVALID_ARGUMENT, "null argument");
    if (!o->has_qstate) return fail(BD3_ERR_PRECONDITION, "not a 3-qubit overlap result");
    *out = new bd3_qstate{o->qapprox};
    return BD3_OK;
}

bd3_status bd3_qstate_load(const char* path, bd3_qstate** out) {
    if (!path || !out) return fail(BD3_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = new bd3_qstate{load_qubit_state(path)}; });
}

bd3_status bd3_qstate_save(const bd3_qstate* q, const char* path) {
    if (!q || !path) return fail(BD3_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { save_qubit_state(q->q, path); });
}

bd3_status bd3_qstate_from_amplitudes(const double* re8, const double* im8, bd3_qstate** out) {
    if (!re8 || !im8 || !out) return fail(BD3_ERR_INVALID_ARGUMENT, "null argument");
    auto q = std::make_unique<bd3_qstate>();
    for (int i = 0; i < 8; ++i) q->q.amps[i] = {re8[i], im8[i]};
    *out = q.release();
    return BD3_OK;
}

bd3_status bd3_qstate_amplitudes(const bd3_qstate* q, double* re8, double* im8) {
    if (!q || !re8 || !im8) return fail(BD3_ERR_INVALID_ARGUMENT, "null argument");
    for (int i = 0; i < 8; ++i) {
        re8[i] = std::real(q->q.amps[i]);
        im8[i] = std::imag(q->q.amps[i]);
    }
    return BD3_OK;
}

bd3_status bd3_qstate_hyperdet(const bd3_qstate* q, double* re, double* im) {
    if (!q || !re || !im) return fail(BD3_ERR_INVALID_ARGUMENT, "null argument");
    const cplx d = cayley_hyperdet(q->q);
    *re = std::real(d);
    *im = std::imag(d);
    return BD3_OK;
}

bd3_status bd3_embed(const bd3_qstate* q, bd3_state** out) {
    if (!q || !out) return fail(BD3_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = new bd3_state{embed(q->q)}; });
}

bd3_status bd3_unembed(const bd3_state* s, int natural_pairing, bd3_qstate** out) {
    if (!s || !out) return fail(BD3_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        PairedBasis pb = natural_pairing ? qubit_subspace(s->t) : standard_pairing();
        *out = new bd3_qstate{unembed(s->t, pb)};
    });
}

bd3_status bd3_maxoverlap_type4a(const bd3_qstate* q, int restarts, uint64_t seed, bd3_overlap** out) {
    if (!q || !out) return fail(BD3_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        Type4aResult r = max_overlap_type4a(q->q, restarts, seed);
        auto o = std::make_unique<bd3_overlap>();
        o->base.overlap = r.overlap;
        o->base.restarts_used = r.restarts_used;
        o->base.certificate = r.certificate;
        o->qapprox = r.approximant;
        o->has_qstate = true;
        *out = o.release();
    });
}

int bd3_default_restarts(void) { return default_restarts(); }

} // extern "C"

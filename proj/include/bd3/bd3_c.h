#ifndef BD3_C_H
#define BD3_C_H

/* C API for the Borland-Dennis three-fermion toolkit.
 *
 * All objects are opaque handles created and destroyed by this library.
 * Every fallible call returns a bd3_status; on failure the thread-local
 * message from bd3_last_error() describes the cause.  Out-parameters are
 * written only on BD3_OK.
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    BD3_OK = 0,
    BD3_ERR_IO = 1,           /* file system problems */
    BD3_ERR_PRECONDITION = 2, /* mathematical precondition violated */
    BD3_ERR_INTERNAL = 3,     /* internal invariant violated */
    BD3_ERR_PARSE = 4,        /* malformed JSON */
    BD3_ERR_VERSION = 5,      /* unsupported format_version */
    BD3_ERR_FORMAT = 6,       /* schema violations (duplicate/unsorted indices, ...) */
    BD3_ERR_INVALID_ARGUMENT = 7
} bd3_status;

typedef struct bd3_state bd3_state;         /* wave function in wedge^3 C^6 */
typedef struct bd3_qstate bd3_qstate;       /* 3-qubit state */
typedef struct bd3_expansion bd3_expansion; /* CI expansion on a reference basis */
typedef struct bd3_overlap bd3_overlap;     /* max-overlap result */

const char* bd3_version(void);
const char* bd3_last_error(void);

void bd3_state_free(bd3_state* s);
void bd3_qstate_free(bd3_qstate* q);
void bd3_expansion_free(bd3_expansion* e);
void bd3_overlap_free(bd3_overlap* o);

/* ----- states ----------------------------------------------------------- */

bd3_status bd3_state_load(const char* path, bd3_state** out);
bd3_status bd3_state_save(const bd3_state* s, const char* path);
/* class_tag: NULL for a generic state, else Type1|Type2a|Type2b|Type3a|
 * Type3b|CIS|CID|OrthoW|OrthoGHZ|LowRank (plus aliases Slater, GHZ, W). */
bd3_status bd3_state_random(uint64_t seed, const char* class_tag, bd3_state** out);
/* 20 amplitudes on lexicographic increasing triples of {1..6}. */
bd3_status bd3_state_from_amplitudes(const double* re20, const double* im20, bd3_state** out);
bd3_status bd3_state_amplitudes(const bd3_state* s, double* re20, double* im20);
double bd3_state_norm(const bd3_state* s);
bd3_status bd3_state_overlap(const bd3_state* a, const bd3_state* b, double* re, double* im);

/* ----- analysis ---------------------------------------------------------- */

typedef struct {
    double occupations[6]; /* descending */
    double pair_sums[3];   /* l1+l6, l2+l5, l3+l4 */
    double inequality_margin; /* l5+l6-l4 */
    int equalities_ok;
    int inequality_ok;
    int saturated;
    int rank;
    double m1;
    double sym1, sym2, sym3;
    double hyperdet_mod2;
    int gl6_class; /* 0 Separable, 1 Biseparable, 2 W, 3 GHZ */
    int borderline;
} bd3_analysis;

bd3_status bd3_analyze(const bd3_state* s, bd3_analysis* out);

/* Tag bit k set in *tags_mask means bd3_tag_name(k) applies. */
bd3_status bd3_detect_types(const bd3_state* s, int restarts, uint64_t seed, unsigned* tags_mask);
const char* bd3_tag_name(int bit_index); /* NULL past the last tag */

/* Runs the library's self-check suite on one state; *failures counts failed
 * checks and `report` (if non-NULL) receives one line per check. */
bd3_status bd3_verify(const bd3_state* s, int restarts, uint64_t seed, char* report, int report_len,
                      int* failures);

/* ----- canonical expansions --------------------------------------------- */

/* form: "bd", "lone", "cis", "cid", "slater5", "cis5".  The latter four run
 * the corresponding optimizer to locate the reference space. */
bd3_status bd3_canonical(const bd3_state* s, const char* form, int restarts, uint64_t seed,
                         bd3_expansion** out);

int bd3_expansion_term_count(const bd3_expansion* e);
/* idx3 receives 1-based ascending orbital indices into the expansion basis. */
void bd3_expansion_term(const bd3_expansion* e, int i, int idx3[3], double* re, double* im);
const char* bd3_expansion_shape(const bd3_expansion* e);
const char* bd3_expansion_label(const bd3_expansion* e, int orbital);
/* 6x6 basis matrix, row-major; column c is reference orbital c+1. */
void bd3_expansion_basis(const bd3_expansion* e, double* re36, double* im36);
double bd3_expansion_residual(const bd3_expansion* e, const bd3_state* source);
bd3_status bd3_expansion_save(const bd3_expansion* e, const char* path);

/* ----- max-overlap approximations ---------------------------------------- */

/* klass: "slater", "lowrank", "cis", "cid". */
bd3_status bd3_maxoverlap(const bd3_state* s, const char* klass, int restarts, uint64_t seed,
                          bd3_overlap** out);

double bd3_overlap_value(const bd3_overlap* o);
int bd3_overlap_restarts(const bd3_overlap* o);
int bd3_overlap_cert_count(const bd3_overlap* o);
const char* bd3_overlap_cert_name(const bd3_overlap* o, int i);
double bd3_overlap_cert_value(const bd3_overlap* o, int i);
bd3_status bd3_overlap_approximant(const bd3_overlap* o, bd3_state** out);
/* The theorem-backed five-term expansion (slater and cis classes). */
bd3_status bd3_overlap_expansion(const bd3_overlap* o, bd3_expansion** out);
bd3_status bd3_overlap_qapproximant(const bd3_overlap* o, bd3_qstate** out); /* type4a only */

/* ----- 3-qubit side ------------------------------------------------------ */

bd3_status bd3_qstate_load(const char* path, bd3_qstate** out);
bd3_status bd3_qstate_save(const bd3_qstate* q, const char* path);
/* 8 amplitudes indexed b1 + 2*b2 + 4*b3. */
bd3_status bd3_qstate_from_amplitudes(const double* re8, const double* im8, bd3_qstate** out);
bd3_status bd3_qstate_amplitudes(const bd3_qstate* q, double* re8, double* im8);
bd3_status bd3_qstate_hyperdet(const bd3_qstate* q, double* re, double* im);

bd3_status bd3_embed(const bd3_qstate* q, bd3_state** out);
/* natural_pairing = 0: invert the standard embedding (errors when the state
 * is off-pattern); 1: use the state's own paired natural-orbital basis. */
bd3_status bd3_unembed(const bd3_state* s, int natural_pairing, bd3_qstate** out);

bd3_status bd3_maxoverlap_type4a(const bd3_qstate* q, int restarts, uint64_t seed, bd3_overlap** out);

/* Default restart count (BD3_RESTARTS environment variable, else 32). */
int bd3_default_restarts(void);

#ifdef __cplusplus
}
#endif

#endif /* BD3_C_H */

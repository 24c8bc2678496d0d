#ifndef CMMOD_CMMOD_H
#define CMMOD_CMMOD_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CMMOD_API __declspec(dllexport)
#else
#define CMMOD_API __attribute__((visibility("default")))
#endif

/* Status codes. The numeric values of the first four match the CLI exit codes. */
typedef enum cmmod_status {
    CMMOD_OK = 0,
    CMMOD_ERR_INTERNAL = 1,
    CMMOD_ERR_PARSE = 2,
    CMMOD_ERR_RESOURCE = 3,
    CMMOD_ERR_DOMAIN = 4,
    CMMOD_ERR_ARGUMENT = 5
} cmmod_status;

typedef enum cmmod_format { CMMOD_FORMAT_TEXT = 0, CMMOD_FORMAT_JSON = 1 } cmmod_format;

typedef struct cmmod_engine cmmod_engine;
typedef struct cmmod_formula cmmod_formula;

/* Engine: structure kind, resource limits and the last error message. */
CMMOD_API cmmod_engine* cmmod_engine_new(void);
CMMOD_API void cmmod_engine_free(cmmod_engine* e);
/* Message of the last failed call on e; "" after a success. Owned by e. */
CMMOD_API const char* cmmod_last_error(const cmmod_engine* e);

/* "cmod", "cmmod" or "isog-a". */
CMMOD_API cmmod_status cmmod_set_structure(cmmod_engine* e, const char* name);
/* name: "lmax", "formula-lmax", "nmax", "dmax", "precision"; value must be positive. */
CMMOD_API cmmod_status cmmod_set_limit(cmmod_engine* e, const char* name, long value);
/* Directory for cached modular polynomials; NULL or "" disables the disk cache. */
CMMOD_API cmmod_status cmmod_set_cache_dir(cmmod_engine* e, const char* dir);

/* Strings returned through char** are released with cmmod_string_free. */
CMMOD_API void cmmod_string_free(char* s);

CMMOD_API cmmod_status cmmod_formula_parse(cmmod_engine* e, const char* text, cmmod_formula** out);
CMMOD_API void cmmod_formula_free(cmmod_formula* f);
CMMOD_API char* cmmod_formula_render(const cmmod_formula* f);
CMMOD_API int cmmod_formula_is_sentence(const cmmod_formula* f);

/* Truth value of a sentence. With report non-NULL, *report receives JSON
   {"value", "otherStructure", "trace"}; the trace is filled when trace != 0. */
CMMOD_API cmmod_status cmmod_decide(cmmod_engine* e, const cmmod_formula* f, int trace, int* value, char** report);
/* Quantifier-free equivalent. trace_json, when non-NULL, receives the steps. */
CMMOD_API cmmod_status cmmod_qe(cmmod_engine* e, const cmmod_formula* f, cmmod_formula** out, char** trace_json);

CMMOD_API cmmod_status cmmod_modpoly(cmmod_engine* e, long level, cmmod_format fmt, char** out);
CMMOD_API cmmod_status cmmod_cm_list(cmmod_engine* e, long dmax, cmmod_format fmt, char** out);
/* system_json: {"n", "atoms": [...]} */
CMMOD_API cmmod_status cmmod_components(cmmod_engine* e, const char* system_json, cmmod_format fmt, char** out);
/* datum_json: {"n", "pi0", "blocks"}; drop is a 1-based coordinate. */
CMMOD_API cmmod_status cmmod_project(cmmod_engine* e, const char* datum_json, int drop, cmmod_format fmt,
                                     char** out);
/* Constants in formula syntax, e.g. "CM(-4;1,0,1)" or "Orb([[1,1],[0,2]])". */
CMMOD_API cmmod_status cmmod_hom_rank(cmmod_engine* e, const char* c1, const char* c2, int* rank);

#ifdef __cplusplus
}
#endif

#endif

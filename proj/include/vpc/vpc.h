#ifndef VPC_H
#define VPC_H

/* C interface to the process-calculus library: programs, numeric codes,
 * stepping machines, explored transition graphs, equivalence checks, index
 * surgery, and the higher-order translation.
 *
 * Conventions: functions return VPC_OK or an error status; vpc_last_error()
 * describes the most recent failure on the calling thread. Strings returned
 * through char** are heap copies owned by the caller; release them with
 * vpc_string_free. Codes travel as decimal strings (they routinely exceed
 * machine integers). */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct vpc_program vpc_program;
typedef struct vpc_machine vpc_machine;
typedef struct vpc_graph vpc_graph;

enum {
  VPC_OK = 0,
  VPC_ERR_SYNTAX = 1,
  VPC_ERR_DIALECT = 2,
  VPC_ERR_OPEN_TERM = 3,
  VPC_ERR_ILL_TYPED = 4,
  VPC_ERR_FUEL = 5,
  VPC_ERR_BAD_ARGUMENT = 6,
  VPC_ERR_CAPTURE = 7,
  VPC_ERR_INTERNAL = 8,
  VPC_ERR_NULL = 9
};

const char* vpc_last_error(void);
void vpc_string_free(char* s);

/* -- programs ------------------------------------------------------------ */

int vpc_parse_source(const char* text, vpc_program** out);
void vpc_program_free(vpc_program* p);
int vpc_program_show(const vpc_program* p, char** out);
/* 0 = replication dialect, 1 = definition dialect, -1 = error */
int vpc_program_dialect(const vpc_program* p);
/* whole-program code (definition dialect only) */
int vpc_program_encode(const vpc_program* p, char** out_code);
/* main term's code, tagged by the program's dialect */
int vpc_encode_term_code(const vpc_program* p, char** out_code);
/* *out_violation is NULL when well-typed, else a description */
int vpc_program_check(const vpc_program* p, const char* sig, char** out_violation);
int vpc_decode_program(const char* code, vpc_program** out);
int vpc_decode_term(const char* code, int bang, vpc_program** out);
/* canonical renaming; whole_program selects program-level codes */
int vpc_normalize_code(const char* code, const char* sig, int bang, int whole_program,
                       char** out);
/* total variant: ill-typed input gives "0" */
int vpc_parse_index(const char* code, const char* sig, int bang, int whole_program, char** out);

/* -- stepping machines ----------------------------------------------------
 * A machine holds one current state; steps are enumerated in a deterministic
 * order and taken by index. */

int vpc_machine_direct(const vpc_program* p, unsigned long vbound, unsigned long fuel,
                       vpc_machine** out);
int vpc_machine_universal(const char* program_code, const char* sig, unsigned long vbound,
                          vpc_machine** out);
int vpc_machine_interpreter(const char* term_code, const char* sig, unsigned long vbound,
                            vpc_machine** out);
void vpc_machine_free(vpc_machine* m);
int vpc_machine_state(const vpc_machine* m, char** out);
int vpc_machine_step_count(vpc_machine* m, int* out);
int vpc_machine_step_label(vpc_machine* m, int i, char** out);
/* 1 when step i is a definition-call tau, 0 otherwise, -1 on error */
int vpc_machine_step_defcall(vpc_machine* m, int i);
/* 1 when step i is a tau whose endpoints are depth-bounded equivalent */
int vpc_machine_step_inert(vpc_machine* m, int i, unsigned long depth);
int vpc_machine_take(vpc_machine* m, int i);

/* -- explored graphs ------------------------------------------------------ */

int vpc_graph_direct(const vpc_program* p, unsigned long vbound, unsigned long state_cap,
                     unsigned long depth_cap, unsigned long fuel, vpc_graph** out);
int vpc_graph_universal(const char* program_code, const char* sig, unsigned long vbound,
                        unsigned long state_cap, unsigned long depth_cap, vpc_graph** out);
int vpc_graph_interpreter(const char* term_code, const char* sig, unsigned long vbound,
                          unsigned long state_cap, unsigned long depth_cap, vpc_graph** out);
void vpc_graph_free(vpc_graph* g);
int vpc_graph_states(const vpc_graph* g);
int vpc_graph_edges(const vpc_graph* g);
int vpc_graph_truncated(const vpc_graph* g);
int vpc_graph_observable(const vpc_graph* g);
int vpc_graph_dump(const vpc_graph* g, char** out);
/* divergence-preserving branching bisimilarity of the two start states */
int vpc_bb_equiv(const vpc_graph* a, const vpc_graph* b, int* out_equivalent,
                 char** out_witness);
/* depth-bounded comparison of two programs under the direct semantics */
int vpc_stratified(const vpc_program* a, const vpc_program* b, unsigned long depth,
                   unsigned long vbound, int* out_equivalent);

/* -- definition indices ---------------------------------------------------
 * def_code = pair(m, pair(systemCode, j)): definition j of an m-definition
 * system. fixed_csv/args_csv are comma-separated decimal naturals. */

int vpc_encode_def_index(const vpc_program* system, unsigned long target, const char* sig,
                         char** out_code);
/* fixes the first parameters of the target definition to fixed_csv */
int vpc_smn(const char* def_code, const char* fixed_csv, char** out_code);
/* interpreter graph of the target definition applied to args_csv */
int vpc_universal_def_graph(const char* def_code, const char* args_csv, const char* sig,
                            unsigned long vbound, unsigned long state_cap,
                            unsigned long depth_cap, vpc_graph** out);

/* -- higher-order terms ---------------------------------------------------
 * Parses a higher-order term and prints its first-order translation. */

int vpc_ho_translate(const char* text, char** out_term);

#ifdef __cplusplus
}
#endif

#endif /* VPC_H */

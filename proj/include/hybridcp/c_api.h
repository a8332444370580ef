#ifndef HYBRIDCP_C_API_H
#define HYBRIDCP_C_API_H

/*
 * Flat calling convention for hosting the contractor engine from another
 * language: integer handles, UTF-8 strings and double buffers only.
 *
 * Status codes returned by hybridcp_contract match ContractStatus.
 * Negative return values are errors.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define HYBRIDCP_FAIL 0
#define HYBRIDCP_ENTAILED 1
#define HYBRIDCP_CONTRACT 2
#define HYBRIDCP_NOTHING 3

#define HYBRIDCP_ERR_HANDLE (-1)
#define HYBRIDCP_ERR_PARSE (-2)
#define HYBRIDCP_ERR_UNKNOWN_CONTRACTOR (-3)
#define HYBRIDCP_ERR_MALFORMED_BOUNDS (-4)
#define HYBRIDCP_ERR_INTERNAL (-5)

/* Open a fresh registry. Returns a positive handle, or a negative error. */
int hybridcp_open(void);

/* Release a handle and every contractor it owns. Returns 0 or HYBRIDCP_ERR_HANDLE. */
int hybridcp_close(int handle);

/*
 * Create one contractor from `count` constraint strings over `arity`
 * variables. Returns its id (0, 1, ... in creation order) or a negative
 * error; on error a message is copied into `error` (if non-null).
 */
int hybridcp_create_contractor(int handle, const char* const* functions, size_t count,
                               size_t arity, char* error, size_t error_size);

/*
 * Contract `bounds` = (x1-, x1+, ..., xn-, xn+) in place; `length` must be
 * 2 * arity. Returns a status code or a negative error.
 */
int hybridcp_contract(int handle, int cont_index, double* bounds, size_t length);

/* Message of the last failed call on `handle` (empty if none). */
const char* hybridcp_last_error(int handle);

#ifdef __cplusplus
}
#endif

#endif /* HYBRIDCP_C_API_H */

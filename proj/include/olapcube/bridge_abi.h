#ifndef OLAPCUBE_BRIDGE_ABI_H_
#define OLAPCUBE_BRIDGE_ABI_H_

/*
 * Flat module boundary. Only integer handles and byte buffers cross it.
 *
 * Inputs are copied by the host into buffers obtained from olap_alloc and
 * released with olap_dealloc. Every entry point returns a module-owned reply
 * buffer laid out as
 *
 *   u32 status (little-endian; 0 = ok, 1 = error)
 *   u32 payload length (little-endian)
 *   payload bytes (UTF-8 JSON)
 *
 * which the host releases with olap_dealloc(reply, 8 + payload length).
 * In the WebAssembly build the same functions are exported without the
 * olap_ prefix: session_create, session_query, session_reset, session_free,
 * alloc, dealloc.
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

uint8_t* olap_alloc(uint32_t len);
void olap_dealloc(uint8_t* ptr, uint32_t len);

uint8_t* olap_session_create(const uint8_t* schema_json, uint32_t schema_len, const uint8_t* facts_csv,
                             uint32_t facts_len);
uint8_t* olap_session_query(uint32_t session, const uint8_t* query_json, uint32_t query_len);
uint8_t* olap_session_reset(uint32_t session);
uint8_t* olap_session_free(uint32_t session);

#ifdef __cplusplus
}
#endif

#endif  // OLAPCUBE_BRIDGE_ABI_H_

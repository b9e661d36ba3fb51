#pragma once

#include <httplib.h>

#include "gts/session.hpp"

namespace gts {

// Installs the session endpoints on `server`:
//   POST /sessions                                  create, body = SessionConfig JSON
//   GET  /sessions/{id}                             current snapshot
//   POST /sessions/{id}/advance?granularity=phase|step
//   POST /sessions/{id}/reset
//   POST /sessions/{id}/play?count=N&granularity=   NDJSON stream of snapshots
//   DELETE /sessions/{id}
// Errors are JSON {"error": ..., "fields": [...]} with 400 or 404.
void install_routes(httplib::Server& server, SessionManager& sessions);

}  // namespace gts

#pragma once

#include <memory>

#include <httplib.h>

#include "lgame/cli.hpp"

namespace lgame::cli {

/// HTTP front end for `service`, with permissive CORS for the browser UI.
std::unique_ptr<httplib::Server> make_http_server(SessionService& service);

}  // namespace lgame::cli

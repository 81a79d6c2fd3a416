/*
 * Copyright 2026 The Frechet Oracle Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *  http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */
#pragma once

#include "frechet/curve.hpp"
#include "frechet/subcurve.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace httplib {
class Server;
}

namespace frechet::tools {

using Params = std::multimap<std::string, std::string>;

struct Reply {
    int status = 200;
    nlohmann::json body;
    std::string audit; // extra fields for the request log
};

/// Stateless request handling over a loaded curve and its indexes. All
/// indices in requests and replies are 1-based.
class Service {
public:
    Service(Curve curve, std::optional<ZoomHierarchy> zoom, std::optional<SubcurveOracle> sub);

    /// Loads the raw curve and one or more index files; every index must
    /// have been built from exactly that curve.
    static Service from_files(const std::string& curve_path, const std::vector<std::string>& index_paths);

    Reply meta() const;
    Reply points(const Params& params) const;
    Reply zoom(const Params& params) const;
    Reply subquery(const std::string& body) const;

    /// Routes GET/POST by path; unknown routes give 404.
    Reply handle(const std::string& method, const std::string& path, const Params& params,
                 const std::string& body) const;

    const Curve& curve() const noexcept { return curve_; }
    bool has_zoom() const noexcept { return zoom_.has_value(); }
    bool has_subcurve() const noexcept { return sub_.has_value(); }

private:
    Curve curve_;
    std::optional<ZoomHierarchy> zoom_;
    std::optional<SubcurveOracle> sub_;
};

nlohmann::json curve_json(const Curve& c);

/// Installs the routes; handlers log one line per request.
void install_routes(httplib::Server& server, const Service& service);

/// Blocks serving on host:port. Returns nonzero if the socket cannot be bound.
int serve(const Service& service, const std::string& host, int port);

} // namespace frechet::tools

#pragma once

#include <arbor/json_io.hpp>

#include <string>
#include <vector>

namespace arbor {

// Result of re-judging a certificate. Verification is independent of the
// descent: words are re-evaluated by plain matrix algebra, every translation
// length is re-measured on the tree by midpoint descent, minimality is
// re-established by a standalone enumeration of all replacement candidates,
// and the ping-pong criterion is checked geometrically.
struct VerifyReport {
    bool ok = false;
    bool conditional = false;  // free result with n > 3
    std::vector<std::string> failures;
    std::string summary;
};

VerifyReport verify_certificate(const CertificateDoc& cert, long cutoff = 0,
                                bool strict_open = false, int threads = 1);

}  // namespace arbor

#ifndef QRG_CLI_HPP
#define QRG_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

namespace qrg {

// One invocation of the tool, already split into fields. The string fields
// keep the raw specs; parsing and validation happen inside run().
struct Request {
    std::string command;          // omega count construct verify graph
                                  // classify local-global
    std::string ring;             // gf:p[^k]  zmod:p^k  q  qp:p  r
    std::string form;             // diag:...  upper:[[...]]  gram:[[...]]
    std::string scalar = "1";     // integer or rational target value
    std::string format = "text";  // text, json; graph also accepts dot
    std::uint64_t cap = 0;        // oracle node budget, 0 keeps the default
    int workers = 1;              // oracle worker count
    std::string suite;            // verify: named sweep instead of one instance
};

// Executes one request. Results are buffered and written to out in a single
// flush, so failures never leave partial output. Exit codes: 0 success
// (including documented warnings), 1 verification mismatch, 2 malformed
// request, 3 violated mathematical precondition (the message names it),
// 4 oracle budget or size limit.
int run(const Request& req, std::ostream& out, std::ostream& err);

// Command-line front end: parses argv into a Request and runs it. Help
// output exits 0; flag errors exit 2.
int run_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace qrg

#endif

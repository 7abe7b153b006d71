#ifndef GRCAT_REPORT_HPP
#define GRCAT_REPORT_HPP

#include <string>
#include <vector>

namespace grcat {

/* Verification outcome.  Math failures are reported, not thrown; `notes`
 * keeps the witness trail in check order. */
struct Report {
    bool pass = true;
    std::vector<std::string> notes;

    void fail(const std::string& what) {
        pass = false;
        notes.push_back("FAIL " + what);
    }
    void note(const std::string& what) { notes.push_back(what); }
    void merge(const Report& r, const std::string& prefix = "") {
        if (!r.pass) pass = false;
        for (const auto& n : r.notes) notes.push_back(prefix.empty() ? n : prefix + ": " + n);
    }
    std::string str() const {
        std::string s = pass ? "pass" : "FAIL";
        for (const auto& n : notes) s += "\n  " + n;
        return s;
    }
};

}  // namespace grcat

#endif

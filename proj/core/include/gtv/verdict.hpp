#ifndef GTV_VERDICT_HPP
#define GTV_VERDICT_HPP

#include <optional>
#include <string>
#include <vector>

#include "gtv/lts.hpp"

namespace gtv {

enum class Status { Holds, Violated, Unknown };

const char* status_name(Status s);

/*
  Three-valued answer of a check. A VIOLATED verdict carries either a lasso
  (infinite counterexample run) or a finite state path, as indices into the
  LTS the check ran on. HOLDS claims exhaustiveness: checks downgrade HOLDS
  to UNKNOWN when their exploration was truncated. `note` explains UNKNOWN
  causes and names the violated obligation.
*/
struct Verdict {
    Status status = Status::Unknown;
    std::optional<Lasso> lasso;
    std::optional<std::vector<int>> path;
    std::string note;

    static Verdict holds() { return Verdict{Status::Holds, {}, {}, ""}; }
    static Verdict unknown(std::string note) {
        return Verdict{Status::Unknown, {}, {}, std::move(note)};
    }
    static Verdict violated_lasso(Lasso l, std::string note) {
        return Verdict{Status::Violated, std::move(l), {}, std::move(note)};
    }
    static Verdict violated_path(std::vector<int> p, std::string note) {
        return Verdict{Status::Violated, {}, std::move(p), std::move(note)};
    }

    // The states the witness touches (empty when there is none).
    std::vector<int> witness_states() const;
};

} // namespace gtv

#endif

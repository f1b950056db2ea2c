#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mlbn {

/// Weight matrix admits two distinct paths of (numerically) equal maximal
/// weight where a unique critical path was required.
class genericity_error : public std::runtime_error {
public:
    explicit genericity_error(const std::string& what) : std::runtime_error(what) {}
};

/// A structural assumption was violated mid-run (e.g. two nodes tie as the
/// source of an induced cycle). Carries the offending node set when known.
class inconsistency_error : public std::runtime_error {
public:
    explicit inconsistency_error(const std::string& what, std::vector<int> nodes = {})
        : std::runtime_error(what), nodes_(std::move(nodes)) {}

    const std::vector<int>& nodes() const { return nodes_; }

private:
    std::vector<int> nodes_;
};

/// Requested enumeration exceeds the configured work budget.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

/// Random generation could not satisfy its contract (e.g. no generic weight
/// draw within the resample budget).
class generation_error : public std::runtime_error {
public:
    explicit generation_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mlbn

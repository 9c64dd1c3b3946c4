#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace chowdiag {

// Base class for every failure this library reports deliberately.
// Subclasses are grouped by how a caller should react:
//   input errors  -> the request itself is malformed or out of contract
//   unsupported   -> the request is well-formed but no exact method applies
//   math errors   -> an internal exactness or consistency check failed
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// -- input errors ------------------------------------------------------

struct InvalidArgument : Error {
    using Error::Error;
};

struct SchemaError : Error {
    using Error::Error;
};

struct InvalidConfig : Error {
    using Error::Error;
};

struct NotAdmissible : Error {
    using Error::Error;
};

struct NonUnitT0 : Error {
    using Error::Error;
};

struct QuiverMismatch : Error {
    using Error::Error;
};

struct FieldMismatch : Error {
    using Error::Error;
};

struct RingMismatch : Error {
    using Error::Error;
};

struct RankMismatch : Error {
    using Error::Error;
};

struct NegativeRank : Error {
    using Error::Error;
};

struct WeightNotOrthogonal : Error {
    using Error::Error;
};

// -- unsupported instances ---------------------------------------------

struct UnsupportedInstance : Error {
    using Error::Error;
};

struct CyclicQuiver : Error {
    using Error::Error;
};

struct ProviderMismatch : Error {
    using Error::Error;
};

// -- math / exactness failures -----------------------------------------

struct NotIntegral : Error {
    using Error::Error;
};

// Carries the degree whose intersection pairing failed to be unimodular
// and the offending Smith normal form diagonal.
struct NotUnimodular : Error {
    int degree;
    std::vector<long long> snf_diagonal;
    NotUnimodular(const std::string& msg, int deg, std::vector<long long> diag)
        : Error(msg), degree(deg), snf_diagonal(std::move(diag)) {}
};

}  // namespace chowdiag

#ifndef MUQ_IO_HPP
#define MUQ_IO_HPP

#include "muq/decomposer.hpp"

#include <filesystem>
#include <iosfwd>

namespace muq {

// Text fixtures. All writers are byte-deterministic; codewords always
// appear in canonical lexicographic order. Digit formats cap q at 10.

// Code: line 1 "q n", optional '#' comment lines, one codeword per line.
void write_code(std::ostream& os, const Code& c, std::span<const std::string> comments = {});
Code read_code(std::istream& is);
void write_code_file(const std::filesystem::path& p, const Code& c);
Code read_code_file(const std::filesystem::path& p);

// Quasigroup: line 1 "m order", line 2 order^m row-major values.
void write_quasigroup(std::ostream& os, const MultaryQuasigroup& f);
MultaryQuasigroup read_quasigroup(std::istream& is);
void write_quasigroup_file(const std::filesystem::path& p, const MultaryQuasigroup& f);
MultaryQuasigroup read_quasigroup_file(const std::filesystem::path& p);

// Partition: line 1 "q n0 parts", parts as codeword blocks separated by
// "--" lines, in index order.
void write_partition(std::ostream& os, const PerfectPartition& p);
PerfectPartition read_partition(std::istream& is);
void write_partition_file(const std::filesystem::path& p, const PerfectPartition& part);
PerfectPartition read_partition_file(const std::filesystem::path& p);

// Component: a code file whose comment header carries "mu=", "t= l= n0="
// and one "sigma=<path>" reference per sigma_i (paths relative to the
// component file). write_sigmas=false reuses already-written files.
void write_component_file(const std::filesystem::path& p, const MuComponent& K,
                          std::vector<std::string> sigma_refs = {}, bool write_sigmas = true);
MuComponent read_component_file(const std::filesystem::path& p);

// Assembly manifest: line 1 "q m r", line 2 the outer code path, then
// "mu=<digits> file=<component path>" lines; paths relative to the
// manifest.
void write_assembly_manifest(const std::filesystem::path& p, int q, int m, int r,
                             const std::string& outer_ref,
                             std::span<const std::pair<Word, std::string>> component_refs);
Assembly read_assembly_manifest(const std::filesystem::path& p, const FieldTable& F);

// Decomposition bundle: a directory with layout.txt ("q m r t s l n0"),
// psi.txt (permutation line, scale line), outer.code, sigma_<i>.qg and
// component_<mu>.code files.
void write_decomposition_bundle(const std::filesystem::path& dir, const Decomposition& D);
Decomposition read_decomposition_bundle(const std::filesystem::path& dir, const FieldTable& F);

} // namespace muq

#endif

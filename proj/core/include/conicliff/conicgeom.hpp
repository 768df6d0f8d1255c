// Builders for the concrete conic-bundle instances over P^2 (the split
// spinor-modified families and the type-5n family), discriminant-curve
// sampling, smoothness probes, and discriminant-data comparison.
//
// Twist data per tag (dual degrees a, twist l, discriminant degree):
//   Type5n  a=(0,1,1) l=-1  disc degree 7
//   Mod12nb a=(0,0,0) l=-1  disc degree 3
//   Mod10na a=(1,1,0) l=0   disc degree 4
//   Mod8nb  a=(1,0,0) l=-1  disc degree 5
#pragma once

#include <optional>

#include "conicliff/quadform.hpp"

namespace conicliff {

enum class InstanceTag { Type5n, Mod12nb, Mod10na, Mod8nb, Random };

std::string instance_tag_name(InstanceTag t);
InstanceTag parse_instance_tag(const std::string& name);

struct InstanceSpec {
    InstanceTag tag = InstanceTag::Type5n;
    std::uint64_t seed = 1;
    Field field = Field::rationals();
    // Twist data for tag Random; ignored otherwise.
    std::optional<SplitTwist> random_twist;
    // Explicit upper-triangular entries (11,12,13,22,23,33) in the shared
    // grammar, overriding the random choices slot by slot ("" keeps random).
    std::optional<std::array<std::string, 6>> overrides;
};

struct ConicBundleInstance {
    TwistedQuadraticForm q;
    InstanceTag tag;
    HomogeneousPoly disc;
    int disc_degree;
};

// Twist data of a named tag; throws for Random.
SplitTwist twist_for_tag(InstanceTag tag);

// Deterministic in (tag, seed, field). Rebuilds with follow-up seeds when the
// probabilistic nowhere-vanishing check or a vanishing determinant rejects a
// draw; throws after a bounded number of reseeds.
ConicBundleInstance make_instance(const InstanceSpec& spec);
ConicBundleInstance make_type_5n(const InstanceSpec& spec);       // tag must be Type5n
ConicBundleInstance make_modified(const InstanceSpec& spec);      // Mod12nb/Mod10na/Mod8nb

// The form with every coefficient reduced mod p (twist unchanged). Identity
// on forms already over F_p with the same p.
TwistedQuadraticForm reduce_form_mod_p(const TwistedQuadraticForm& q, std::uint32_t p);

// Points of P^n(F_p) on the discriminant curve, found exactly by restricting
// the discriminant to random lines and scanning for roots. Lines fully
// contained in the discriminant are recorded in *lines_in_disc when given.
std::vector<std::vector<Scalar>> sample_discriminant_points(
    const TwistedQuadraticForm& q, std::uint32_t count, std::uint64_t seed,
    std::uint32_t reduction_prime = kDefaultPrime, std::size_t* lines_in_disc = nullptr);

// Jacobian probe of the total space at sampled points over sampled
// discriminant points (where singularities concentrate), plus the squarefree
// signature of the discriminant. Q instances are probed on their F_p
// reduction; the report says so.
Report smoothness_probe(const ConicBundleInstance& instance, std::uint32_t sample_count,
                        std::uint64_t seed);

// Exact proportionality of the two discriminants plus fiber-rank agreement at
// sampled common discriminant points. The double-cover datum of the full
// discriminant-data equivalence is not computed; the report states this.
Report discriminant_data_compare(const TwistedQuadraticForm& q1,
                                 const TwistedQuadraticForm& q2, std::uint32_t sample_count,
                                 std::uint64_t seed);

}  // namespace conicliff

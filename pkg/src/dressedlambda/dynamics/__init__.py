from .evolve import Probe, Trajectory, time_domain_reflection, time_evolve
from .lindblad import (
    Channel,
    Frame,
    LindbladModel,
    SteadyState,
    build_lindblad_rotating,
    build_lindblad_secular,
    dressed_populations,
    liouvillian,
    null_space_dimension,
    steady_state,
)
from .response import (
    Method,
    ReflectionResult,
    linear_response,
    linear_response_reflection,
    probe_induced_populations,
    reflection_map,
    reflection_row,
)
from .spectrum import (
    EfficiencyPoint,
    Spectrum,
    down_conversion_efficiency,
    output_spectrum,
    two_time_correlation,
)

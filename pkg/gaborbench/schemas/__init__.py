from gaborbench.schemas.experiment import Command, ExperimentConfig, Lemma, OutputFormat
from gaborbench.schemas.moments import Normalization, TraceMomentEstimate
from gaborbench.schemas.nerf import MubProfile, NerfRow
from gaborbench.schemas.payloads import FrameSetPayload, WindowPayload
from gaborbench.schemas.spectrum import SpectrumReport
from gaborbench.schemas.tail import TailCheckReport

__all__ = [
    "Command",
    "ExperimentConfig",
    "FrameSetPayload",
    "Lemma",
    "MubProfile",
    "NerfRow",
    "Normalization",
    "OutputFormat",
    "SpectrumReport",
    "TailCheckReport",
    "TraceMomentEstimate",
    "WindowPayload",
]

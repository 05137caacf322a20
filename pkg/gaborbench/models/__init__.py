from gaborbench.models.eigen import HermitianEigenResult
from gaborbench.models.frame_set import FrameSet
from gaborbench.models.subset import SubsetOfZM
from gaborbench.models.synthesis import SynthesisMatrix
from gaborbench.models.window import Window, WindowKind

__all__ = [
    "FrameSet",
    "HermitianEigenResult",
    "SubsetOfZM",
    "SynthesisMatrix",
    "Window",
    "WindowKind",
]

from dataclasses import dataclass

from omegaconf import DictConfig, OmegaConf

from nilop.ops import is_prime

DEFAULT_BUDGET = 2_000_000


@dataclass(unsafe_hash=True, order=True)
class NilopConfig:
    budget: int
    seed: int
    p: int
    show_progress: bool
    log_level: str

    def __init__(
        self,
        budget: int = DEFAULT_BUDGET,
        seed: int = 0,
        p: int = 2,
        show_progress: bool = False,
        log_level: str = "INFO",
    ):
        if budget < 1:
            raise ValueError(f"budget must be positive, got {budget}")
        if not is_prime(p):
            raise ValueError(f"p must be prime, got {p}")

        self.budget = budget
        """
        Largest number of End-algebra elements or candidate vectors scanned
        before a certification gives up.
        """
        self.seed = seed
        self.p = p
        self.show_progress = show_progress
        self.log_level = log_level

    def to_dict(self):
        return {
            "budget": self.budget,
            "seed": self.seed,
            "p": self.p,
            "show_progress": self.show_progress,
            "log_level": self.log_level,
        }

    def replace(self, **overrides) -> "NilopConfig":
        values = self.to_dict()
        values.update({k: v for k, v in overrides.items() if v is not None})
        return NilopConfig(**values)

    @classmethod
    def from_dict(cls, config_dict: dict | DictConfig):
        if isinstance(config_dict, DictConfig):
            config_dict = OmegaConf.to_container(config_dict, resolve=True)
        config_dict = dict(config_dict)
        # budget may arrive as a string through ${oc.env:...}
        if "budget" in config_dict:
            config_dict["budget"] = int(config_dict["budget"])

        unknown = set(config_dict) - set(cls().to_dict())
        if unknown:
            raise ValueError(f"Unknown config keys: {sorted(unknown)}")
        return cls(**config_dict)

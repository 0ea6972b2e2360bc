from typing import Optional
from pydantic_settings import BaseSettings
from dotenv import load_dotenv

# Load environment variables
load_dotenv()


class Settings(BaseSettings):
    """Application settings and configuration."""

    # API Configuration
    app_name: str = "Mapping Class Group Certifier"
    app_description: str = (
        "Certifies the isomorphisms between low-complexity pure mapping class groups "
        "and braid/Artin-type groups with Tietze moves, Garside normal forms and exact "
        "Laurent-polynomial matrix representations."
    )
    app_version: str = "1.0.0"
    debug: bool = False

    # Server Configuration
    host: str = "0.0.0.0"
    port: int = 8000

    # Verification Configuration
    desk_scale_bound: int = 6
    lk_max_strands: int = 5
    random_seed: int = 20240917
    sample_words: int = 40
    matrix_check_max_dim: int = 12

    # Conventions recorded in certificate metadata
    twist_direction: str = "right-handed"
    lk_convention: str = "krammer:x_ij,sigma_k x_kk+1=t*q^2*x_kk+1"
    cw_convention: str = "root-basis:psi_i+t*phi_i(e_beta)*e_alpha_i,phi_i(alpha_i)=q^2"
    word_convention: str = "left-to-right product, matrices multiplied in word order"

    # Output Configuration
    default_output_format: str = "text"
    output_path: Optional[str] = None

    # Logging Configuration
    log_level: str = "INFO"
    log_format: str = "text"

    class Config:
        env_file = ".env"
        case_sensitive = False

    def validate_settings(self) -> None:
        """Validate that numeric bounds and formats are usable."""
        problems = []
        if self.desk_scale_bound < 2:
            problems.append(f"desk_scale_bound must be >= 2 (got {self.desk_scale_bound})")
        if not 2 <= self.lk_max_strands <= 6:
            problems.append(f"lk_max_strands must be in 2..6 (got {self.lk_max_strands})")
        if self.default_output_format not in ("text", "json"):
            problems.append(f"default_output_format must be text or json (got {self.default_output_format})")
        if self.log_format not in ("text", "json"):
            problems.append(f"log_format must be text or json (got {self.log_format})")
        if self.matrix_check_max_dim < 1:
            problems.append(f"matrix_check_max_dim must be positive (got {self.matrix_check_max_dim})")
        if self.sample_words < 0:
            problems.append("sample_words must be non-negative")

        if problems:
            raise ValueError(f"Invalid settings: {'; '.join(problems)}")

    def conventions(self) -> dict:
        """Convention identifiers copied into every certificate."""
        return {
            "twist_direction": self.twist_direction,
            "lk_convention": self.lk_convention,
            "cw_convention": self.cw_convention,
            "word_convention": self.word_convention,
        }


# Global settings instance
settings = Settings()

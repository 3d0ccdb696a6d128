from typing import Any

from pydantic import BaseModel, Field, model_validator


class Verdict(BaseModel):
    scenario: str
    holds: bool
    # Transcript entry refs ("label#step") or party steps that witness the result
    evidence: list[str] = Field(default_factory=list)
    details: dict[str, Any] = Field(default_factory=dict)
    # Deliberately weakened runs of the same game; each is expected not to hold.
    controls: list["Verdict"] = Field(default_factory=list)
    is_control: bool = False

    @model_validator(mode="after")
    def _witnessed(self) -> "Verdict":
        if self.holds and not self.evidence:
            raise ValueError(f"verdict for {self.scenario} holds without evidence")
        return self

    @property
    def controls_discriminate(self) -> bool:
        return all(not control.holds for control in self.controls)

    def flatten(self) -> list["Verdict"]:
        out = [self.model_copy(update={"controls": []})]
        for control in self.controls:
            out.extend(control.flatten())
        return out

    def to_jsonl(self) -> str:
        return "".join(v.model_dump_json() + "\n" for v in self.flatten())


def combine(scenario: str, parts: list[Verdict]) -> Verdict:
    """One verdict that holds iff every part holds; controls are pooled"""
    return Verdict(
        scenario=scenario,
        holds=all(p.holds for p in parts),
        evidence=[ref for p in parts for ref in p.evidence],
        details={p.scenario: p.details for p in parts},
        controls=[c for p in parts for c in p.controls],
    )

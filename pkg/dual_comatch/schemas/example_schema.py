"""
example_schema.py

Defines the Pydantic schema for one multi-choice reading comprehension instance.

Schemas:
- MultiChoiceExample: (passage, question, candidates, gold) with an identifier.

Features:
- Rejects instances with fewer than two candidates, blank candidates or an out-of-range gold index.
- Allows an empty question (story completion); encoders substitute a placeholder token.
- Strict field types: a string gold index, a boolean, or a non-string candidate is rejected, never coerced.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

from typing import List

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    StrictInt,
    StrictStr,
    field_validator,
    model_validator,
)


class MultiChoiceExample(BaseModel):
    """
    Schema for a multi-choice example.

    Attributes:
        id (str): Stable identifier (RACE ids carry the subset, e.g. `high/1234.txt#0`).
        passage (str): The passage text.
        question (str): The question text, empty for story completion.
        candidates (List[str]): The N candidate answers.
        gold (int): Index of the correct candidate.
    """

    id: StrictStr = Field(..., min_length=1)
    passage: StrictStr
    question: StrictStr = ""
    candidates: List[StrictStr] = Field(..., min_length=2)
    gold: StrictInt = Field(..., ge=0)

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "id": "middle/42.txt#0",
                "passage": "The Silk Road was made up of many routes, not one smooth path.",
                "question": "The Silk Road became less important because _ .",
                "candidates": [
                    "it was made up of different routes",
                    "silk trading became less popular",
                    "sea travel provided easier routes",
                    "people needed fewer foreign goods",
                ],
                "gold": 2,
            }
        },
    )

    @field_validator("passage")
    @classmethod
    def validate_passage(cls, value: str) -> str:
        """
        Validates that the passage has content.

        Raises:
            ValueError: If the passage is blank.
        """
        if not value.strip():
            raise ValueError("Passage cannot be empty.")
        return value

    @field_validator("candidates")
    @classmethod
    def validate_candidates(cls, value: List[str]) -> List[str]:
        """
        Validates that no candidate is blank.

        Raises:
            ValueError: If a candidate is empty.
        """
        if any(not candidate.strip() for candidate in value):
            raise ValueError("Candidates cannot be empty.")
        return value

    @model_validator(mode="after")
    def validate_gold(self) -> "MultiChoiceExample":
        """
        Validates that the gold index addresses a candidate.

        Raises:
            ValueError: If gold >= number of candidates.
        """
        if self.gold >= len(self.candidates):
            raise ValueError(
                f"Gold index {self.gold} out of range for {len(self.candidates)} candidates."
            )
        return self

    @property
    def num_candidates(self) -> int:
        return len(self.candidates)

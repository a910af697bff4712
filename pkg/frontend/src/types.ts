/** Document shapes exchanged with the case service (canonical JSON). */

export interface SectorDoc {
  sector_id: string;
  label: string;
}

export interface SectorConfigDoc {
  sectors: SectorDoc[];
}

export interface PositionDoc {
  sector_id: string;
  radius: number;
  angle_frac: number;
}

export interface ContactDoc {
  contact_id: string;
  display_name: string;
  gender: string | null;
  role: string | null;
  age: number | null;
  is_human: boolean;
  emoji: string | null;
  position: PositionDoc;
}

export interface EdgeDoc {
  a: string;
  b: string;
}

export interface VersionDoc {
  version_id: string;
  label: string;
  created_at: string;
  sector_config: SectorConfigDoc;
  contacts: ContactDoc[];
  edges: EdgeDoc[];
}

export interface LaneDoc {
  lane_id: string;
  label: string;
  standard: boolean;
  order_index: number;
}

export interface EventDoc {
  event_id: string;
  lane_id: string;
  start: string;
  end: string | null;
  title: string;
  note: string;
  emoji: string | null;
}

export interface TimeBarDoc {
  birth_date: string;
  domain_end: string;
  lanes: LaneDoc[];
  events: EventDoc[];
}

export interface CaseDoc {
  schema_version: number;
  case_id: string;
  revision: number;
  client: { display_name: string; gender: string | null; birth_date: string | null };
  sector_config: SectorConfigDoc;
  netmap_versions: VersionDoc[];
  timebar: TimeBarDoc | null;
}

export interface CaseSummary {
  case_id: string;
  display_name: string;
  revision: number;
}

export interface MetricsDoc {
  network_size: number;
  per_sector_counts: Record<string, number>;
  occupied_sector_fraction: number;
  mean_closeness: number | null;
  alter_density: number | null;
  isolated_alter_count: number;
  gender_counts: Record<string, number>;
  non_human_count: number;
}

export interface FragmentDoc {
  event_id: string;
  t0: string;
  t1: string;
  y0: number;
  y1: number;
}

export interface LaneLayoutDoc {
  lane_id: string;
  fragments: FragmentDoc[];
}

export interface SuggestionDoc {
  moves: Record<string, PositionDoc>;
  unresolved: [string, string][];
}

export interface ApiErrorDoc {
  status: number;
  code: string;
  detail: string;
  violations?: { entity: string; rule: string; message: string }[];
}

export interface ContactInput {
  contact_id?: string;
  display_name: string;
  gender?: string | null;
  role?: string | null;
  age?: number | null;
  is_human?: boolean;
  emoji?: string | null;
  position: PositionDoc;
}

export interface EventInput {
  event_id?: string;
  lane_id: string;
  start: string;
  end: string | null;
  title: string;
  note?: string;
  emoji?: string | null;
}
